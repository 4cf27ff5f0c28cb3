#include "sa/diagnostics/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sa/errors.hpp"

namespace sa::diagnostics {

ErrorPath empirical_average_path(const TestFn& f, innovations::InnovationSource& source, double nu_f,
                                 std::span<const std::size_t> checkpoints) {
    if (!std::isfinite(nu_f)) throw std::invalid_argument("empirical_average_path: reference value not finite");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] == 0) throw std::invalid_argument("empirical_average_path: checkpoints start at 1");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("empirical_average_path: checkpoints must increase strictly");
    }
    ErrorPath path;
    std::vector<double> y(source.dimension());
    double sum = 0.0;
    std::size_t k = 0;
    for (std::size_t cp : checkpoints) {
        for (; k < cp; ++k) {
            source.next(y);
            const double v = f(y);
            if (!std::isfinite(v)) throw NumericError("empirical_average_path: f returned non-finite", k);
            sum += v;
        }
        path.n.push_back(cp);
        path.error.push_back(std::abs(sum / static_cast<double>(cp) - nu_f));
    }
    return path;
}

RateFit fit_rate(const ErrorPath& path) {
    if (path.n.size() != path.error.size()) throw std::invalid_argument("fit_rate: malformed path");
    RateFit fit;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < path.n.size(); ++i) {
        if (!(path.error[i] > 0.0)) {
            fit.warnings.push_back("checkpoint n=" + std::to_string(path.n[i]) + " has zero error, excluded");
            continue;
        }
        xs.push_back(std::log(static_cast<double>(path.n[i])));
        ys.push_back(std::log(path.error[i]));
    }
    if (xs.size() < 5)
        throw std::invalid_argument("fit_rate: need at least 5 checkpoints with positive error, got " +
                                    std::to_string(xs.size()));
    const double m = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    fit.beta = -slope;
    fit.intercept = my - slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.used = xs.size();
    return fit;
}

double weighted_empirical_average(std::span<const double> values, std::span<const double> weights) {
    if (values.size() != weights.size())
        throw std::invalid_argument("weighted_empirical_average: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(weights[i] >= 0.0)) throw std::invalid_argument("weighted_empirical_average: negative weight");
        num += weights[i] * values[i];
        den += weights[i];
    }
    if (!(den > 0.0)) throw std::invalid_argument("weighted_empirical_average: weights sum to zero");
    return num / den;
}

LyapunovChannel lyapunov_monitor(const core::Trajectory& traj,
                                 const std::function<double(std::span<const double>)>& L, double tolerance) {
    LyapunovChannel ch;
    ch.n = traj.steps();
    for (std::size_t r = 0; r < traj.size(); ++r) ch.values.push_back(L(traj.theta(r)));
    if (ch.values.empty()) return ch;
    const std::size_t tail = std::max<std::size_t>(1, ch.values.size() / 5);
    const auto first = ch.values.end() - static_cast<std::ptrdiff_t>(tail);
    const auto [lo, hi] = std::minmax_element(first, ch.values.end());
    ch.tail_range = *hi - *lo;
    ch.tail_stable = std::isfinite(ch.tail_range) && ch.tail_range <= tolerance;
    return ch;
}

std::vector<std::size_t> default_checkpoints(std::size_t horizon) {
    std::vector<std::size_t> cps;
    for (std::size_t n = 128; n <= horizon; n *= 2) cps.push_back(n);
    return cps;
}

std::vector<std::size_t> log_spaced_checkpoints(std::size_t lo, std::size_t hi, std::size_t count) {
    if (lo == 0 || hi < lo || count < 2) throw std::invalid_argument("log_spaced_checkpoints: bad range");
    std::vector<std::size_t> cps;
    const double a = std::log(static_cast<double>(lo)), b = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        auto n = static_cast<std::size_t>(std::llround(std::exp(a + t * (b - a))));
        if (i + 1 == count) n = hi;
        if (cps.empty() || n > cps.back()) cps.push_back(n);
    }
    return cps;
}

} // namespace sa::diagnostics
