#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sa/core/series_probe.hpp"
#include "sa/core/step_schedule.hpp"
#include "sa/innovations/sources.hpp"

namespace sa::innovations {

/// gamma_bar_n = gamma0 n^-r, gamma0 > 0, r in (0,1).
struct DecreasingStepSchedule {
    double gamma0 = 1.0;
    double r = 1.0 / 3.0;

    DecreasingStepSchedule(double gamma0, double r);
    double operator()(std::size_t n) const;
};

/// b(y) written into out.
using DriftFn = std::function<void(std::span<const double> y, std::span<double> out)>;
/// sigma(y) U written into out (state dimension); U has the noise dimension.
using DiffusionFn =
    std::function<void(std::span<const double> y, std::span<const double> u, std::span<double> out)>;

/// y + g b(y) + sqrt(g) sigma(y) U. Throws NumericError (carrying `step`) on non-finite values.
std::vector<double> euler_step(std::span<const double> y, const DriftFn& drift,
                               const DiffusionFn& diffusion, double gamma, std::span<const double> u,
                               std::size_t step = 0);

/// Euler scheme with decreasing step as an innovation stream: Y_0 = y0, then
/// Y_n = euler_step(Y_{n-1}, gamma_bar_n, U_n) with U_n from `noise`.
class EulerSource final : public InnovationSource {
public:
    EulerSource(std::vector<double> y0, DriftFn drift, DiffusionFn diffusion, DecreasingStepSchedule steps,
                std::unique_ptr<InnovationSource> noise);
    EulerSource(const EulerSource& other);
    EulerSource& operator=(const EulerSource&) = delete;

    std::size_t dimension() const noexcept override { return y0_.size(); }
    std::string_view kind() const noexcept override { return "euler-decreasing"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override;
    /// Independent chain restarted at y0, driven by the noise source's substream.
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

    std::size_t step_index() const noexcept { return n_; }
    const DecreasingStepSchedule& steps() const noexcept { return steps_; }

private:
    std::vector<double> y0_;
    std::vector<double> y_;
    DriftFn drift_;
    DiffusionFn diffusion_;
    DecreasingStepSchedule steps_;
    std::unique_ptr<InnovationSource> noise_;
    std::vector<double> u_;
    std::size_t n_ = 0;
};

enum class AveragingVerdict { averaging, not_averaging, inconclusive };

const char* to_string(AveragingVerdict v) noexcept;

struct AveragingReport {
    AveragingVerdict verdict = AveragingVerdict::inconclusive;
    /// Set when the closed-form rule applies (power gamma_bar, eta constant).
    std::optional<bool> closed_form;
    std::string rule;
    /// lim gamma_bar = 0, sum (1/H_n)(Delta eta/gamma_bar)_+ < inf, sum (eta_n/(H_n sqrt gamma_bar_n))^2 < inf,
    /// sum gamma_bar = inf, sum eta = inf.
    std::vector<core::ConditionCheck> conditions;
    /// Verdict of the partial-sum probe alone.
    AveragingVerdict numeric = AveragingVerdict::inconclusive;
};

/// Step-weight system check for (gamma_bar, eta) up to horizon N (N >= 10).
AveragingReport averaging_system_check(const core::PowerSequence& gamma_bar, const core::PowerSequence& eta,
                                       std::size_t horizon);

} // namespace sa::innovations
