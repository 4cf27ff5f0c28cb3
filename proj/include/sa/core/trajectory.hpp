#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sa::core {

/// Recorded (n, theta_n) rows plus named scalar monitor channels.
class Trajectory {
public:
    Trajectory(std::size_t dimension, std::vector<std::string> monitor_names = {});

    /// Appends a row; n must exceed the last recorded index.
    void record(std::size_t n, std::span<const double> theta, std::span<const double> monitors = {});

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return steps_.size(); }
    bool empty() const noexcept { return steps_.empty(); }

    const std::vector<std::size_t>& steps() const noexcept { return steps_; }
    std::span<const double> theta(std::size_t row) const;
    double monitor(std::size_t row, std::size_t channel) const;
    const std::vector<std::string>& monitor_names() const noexcept { return monitor_names_; }

    /// theta_0..theta_{d-1} followed by the monitor names.
    std::vector<std::string> channels() const;
    /// Column for a channel name; throws listing the available channels if unknown.
    std::vector<double> channel(const std::string& name) const;

    /// n,theta_0,...,theta_{d-1}[,monitor...] with %.17g values.
    void write_csv(std::ostream& os) const;
    std::string to_csv() const;

    // Run metadata.
    std::vector<double> final_theta;
    std::size_t steps_done = 0;
    double wall_seconds = 0.0;

private:
    std::size_t dim_;
    std::vector<std::string> monitor_names_;
    std::vector<std::size_t> steps_;
    std::vector<double> thetas_;
    std::vector<double> monitors_;
};

} // namespace sa::core
