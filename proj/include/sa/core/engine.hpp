#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sa/core/step_schedule.hpp"
#include "sa/core/trajectory.hpp"
#include "sa/innovations/sources.hpp"

namespace sa::core {

/// H(theta, y) written into out (size d).
using FieldFn = std::function<void(std::span<const double> theta, std::span<const double> y, std::span<double> out)>;
/// Martingale increment Delta M_{n+1} given (n, theta_n); draws from its own generator.
using IncrementFn =
    std::function<void(std::size_t n, std::span<const double> theta, std::mt19937_64& rng, std::span<double> out)>;

struct Monitor {
    std::string name;
    std::function<double(std::size_t n, std::span<const double> theta)> value;
};

struct ProcedureConfig {
    std::size_t dimension = 1;
    FieldFn H;
    IncrementFn increment;              // empty: Delta M = 0
    std::uint64_t increment_seed = 0;
    std::vector<double> theta0;
    StepSchedule steps = StepSchedule::power(1.0, 1.0);
    std::size_t horizon = 0;
    std::size_t record_stride = 100;
    std::vector<Monitor> monitors;      // evaluated at recorded rows
    /// Called after every update with (n+1, theta_{n+1}, Y_n).
    std::function<void(std::size_t n, std::span<const double> theta, std::span<const double> y)> observer;
    /// May modify theta_{n+1} in place after the update (projections, safeguards).
    std::function<void(std::size_t n, std::span<double> theta)> post_step;
    double divergence_bound = 1e12;
};

/// theta - gamma (H(theta, y) + dM); dM empty means zero.
std::vector<double> sa_step(std::span<const double> theta, std::span<const double> y, double gamma,
                            const FieldFn& H, std::span<const double> dM = {}, std::size_t step = 0);

/// Iterates theta_{n+1} = theta_n - gamma_{n+1}(H(theta_n, Y_n) + Delta M_{n+1}), n = 0..N-1.
/// Records (0, theta_0), every record_stride-th step and the last step.
/// Throws DivergenceError when |theta| exceeds the bound, NumericError on non-finite H.
Trajectory run(const ProcedureConfig& cfg, innovations::InnovationSource& source);

} // namespace sa::core
