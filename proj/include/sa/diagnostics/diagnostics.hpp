#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sa/core/trajectory.hpp"
#include "sa/innovations/sources.hpp"

namespace sa::diagnostics {

using TestFn = std::function<double(std::span<const double> y)>;

/// |(1/n) sum_{k<n} f(Y_k) - nu(f)| at each checkpoint n.
struct ErrorPath {
    std::vector<std::size_t> n;
    std::vector<double> error;
};

/// One pass through `source` (Y_0, Y_1, ...); memory does not depend on the largest checkpoint.
ErrorPath empirical_average_path(const TestFn& f, innovations::InnovationSource& source, double nu_f,
                                 std::span<const std::size_t> checkpoints);

/// error ~ C n^-beta fitted by least squares in log-log scale.
struct RateFit {
    double beta = 0.0;
    double intercept = 0.0; // log C
    double r_squared = 0.0;
    std::size_t used = 0;
    std::vector<std::string> warnings;
};

/// Zero errors are dropped with a warning; throws if fewer than 5 points survive.
RateFit fit_rate(const ErrorPath& path);

/// sum eta_k v_k / sum eta_k.
double weighted_empirical_average(std::span<const double> values, std::span<const double> weights);

struct LyapunovChannel {
    std::vector<std::size_t> n;
    std::vector<double> values;
    /// max - min over the last 20% of records.
    double tail_range = 0.0;
    bool tail_stable = false;
};

LyapunovChannel lyapunov_monitor(const core::Trajectory& traj,
                                 const std::function<double(std::span<const double>)>& L,
                                 double tolerance = 1e-3);

/// 2^7, 2^8, ... up to the horizon.
std::vector<std::size_t> default_checkpoints(std::size_t horizon);

/// `count` log-spaced distinct integers from lo to hi (inclusive).
std::vector<std::size_t> log_spaced_checkpoints(std::size_t lo, std::size_t hi, std::size_t count);

} // namespace sa::diagnostics
