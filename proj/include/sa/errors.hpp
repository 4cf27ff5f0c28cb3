#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sa {

/// A computation produced NaN or infinity. Carries the step index at which it happened.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, std::size_t step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// The iterate left the configured bound; the run was aborted.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::size_t step, double norm, double bound)
        : std::runtime_error("divergence guard: |theta| = " + std::to_string(norm) + " exceeds " +
                             std::to_string(bound) + " at step " + std::to_string(step)),
          step_(step), norm_(norm) {}

    std::size_t step() const noexcept { return step_; }
    double norm() const noexcept { return norm_; }

private:
    std::size_t step_;
    double norm_;
};

/// Exact evaluation would exceed the operation budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sa
