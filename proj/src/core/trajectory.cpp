#include "sa/core/trajectory.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sa::core {

Trajectory::Trajectory(std::size_t dimension, std::vector<std::string> monitor_names)
    : dim_(dimension), monitor_names_(std::move(monitor_names)) {
    if (dimension == 0) throw std::invalid_argument("Trajectory: dimension must be >= 1");
}

void Trajectory::record(std::size_t n, std::span<const double> theta, std::span<const double> monitors) {
    if (theta.size() != dim_) throw std::invalid_argument("Trajectory::record: dimension mismatch");
    if (monitors.size() != monitor_names_.size())
        throw std::invalid_argument("Trajectory::record: monitor count mismatch");
    if (!steps_.empty() && n <= steps_.back())
        throw std::invalid_argument("Trajectory::record: indices must increase strictly");
    steps_.push_back(n);
    thetas_.insert(thetas_.end(), theta.begin(), theta.end());
    monitors_.insert(monitors_.end(), monitors.begin(), monitors.end());
}

std::span<const double> Trajectory::theta(std::size_t row) const {
    return std::span<const double>(thetas_).subspan(row * dim_, dim_);
}

double Trajectory::monitor(std::size_t row, std::size_t channel) const {
    return monitors_.at(row * monitor_names_.size() + channel);
}

std::vector<std::string> Trajectory::channels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < dim_; ++i) out.push_back("theta_" + std::to_string(i));
    out.insert(out.end(), monitor_names_.begin(), monitor_names_.end());
    return out;
}

std::vector<double> Trajectory::channel(const std::string& name) const {
    const auto names = channels();
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (names[c] != name) continue;
        std::vector<double> col(size());
        for (std::size_t r = 0; r < size(); ++r) col[r] = c < dim_ ? theta(r)[c] : monitor(r, c - dim_);
        return col;
    }
    std::string msg = "unknown channel '" + name + "'; available:";
    for (const auto& n : names) msg += " " + n;
    throw std::invalid_argument(msg);
}

void Trajectory::write_csv(std::ostream& os) const {
    os << "n";
    for (const auto& c : channels()) os << ',' << c;
    os << '\n';
    char buf[32];
    for (std::size_t r = 0; r < size(); ++r) {
        os << steps_[r];
        for (double x : theta(r)) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            os << ',' << buf;
        }
        for (std::size_t m = 0; m < monitor_names_.size(); ++m) {
            std::snprintf(buf, sizeof buf, "%.17g", monitor(r, m));
            os << ',' << buf;
        }
        os << '\n';
    }
}

std::string Trajectory::to_csv() const {
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

} // namespace sa::core
