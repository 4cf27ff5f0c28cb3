#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sa::core {

/// scale * n^(-exponent), n >= 1.
struct PowerSequence {
    double scale = 1.0;
    double exponent = 0.0;

    double operator()(std::size_t n) const;
};

/// Gain sequence gamma_n (n >= 1): nonnegative and non-increasing.
class StepSchedule {
public:
    /// gamma_n = c n^(-a); requires c >= 0 and a >= 0.
    static StepSchedule power(double c, double a);
    /// gamma_n = values[n-1]; rejects negative or increasing entries.
    static StepSchedule tabulated(std::vector<double> values);

    double operator()(std::size_t n) const;

    bool is_power() const noexcept { return table_.empty(); }
    double scale() const noexcept { return power_.scale; }
    double exponent() const noexcept { return power_.exponent; }
    /// Number of tabulated values; empty for closed-form schedules.
    std::optional<std::size_t> length() const noexcept;

    std::string describe() const;

private:
    StepSchedule() = default;

    PowerSequence power_{};
    std::vector<double> table_;
};

/// Averaging rate eps_n = (log n)^kappa n^(-beta), beta in (0,1], kappa >= 0.
struct RateSpec {
    double beta = 0.5;
    double kappa = 0.0;

    static RateSpec power(double beta);
    static RateSpec log_power(double kappa, double beta);

    double operator()(std::size_t n) const;
    std::string describe() const;
};

} // namespace sa::core
