#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sa/core/series_probe.hpp"
#include "sa/core/step_schedule.hpp"

namespace sa::core {

enum class Verdict { admissible, not_admissible, inconclusive };

const char* to_string(Verdict v) noexcept;

/// Result of checking a (gamma_n, eps_n) pair against
///   sum gamma_n = inf,  n eps_n gamma_n -> 0,  sum n eps_n max(gamma_n^2, |gamma_{n+1} - gamma_n|) < inf.
struct AdmissibilityReport {
    Verdict verdict = Verdict::inconclusive;
    /// Human-readable descriptions of the failed conditions / inequalities.
    std::vector<std::string> failed;
    /// Closed-form rule applied, empty for the numeric probe.
    std::string rule;
    /// Per-condition numeric evidence (numeric probe only).
    std::vector<ConditionCheck> conditions;

    bool admissible() const noexcept { return verdict == Verdict::admissible; }
    std::string describe() const;
};

/// gamma_n = c n^-a against eps_n = n^-beta: admissible iff beta in (0,1] and 1 - beta/2 < a <= 1.
AdmissibilityReport admissible_power_pair(double a, double beta);

enum class Regularity { finite_variation, lipschitz };

const char* to_string(Regularity r) noexcept;

/// QSA with a q-dimensional low-discrepancy sequence and gamma_n = c n^-a.
/// finite variation: eps_n = (log n)^q / n, admissible iff 1/2 < a <= 1.
/// Lipschitz:        eps_n = log n n^(-1/q), admissible iff 1 - 1/(2q) < a <= 1.
AdmissibilityReport admissible_qsa(Regularity regularity, std::size_t q, double a);

/// Rate attached to the QSA setting above.
RateSpec qsa_rate(Regularity regularity, std::size_t q);

/// Numeric partial-sum probe of the three conditions up to N (N >= 10). Tabulated schedules
/// must hold at least N+1 values.
AdmissibilityReport check_schedule_numeric(const StepSchedule& steps, const RateSpec& eps, std::size_t horizon,
                                           const ProbeTolerance& tol = {});

} // namespace sa::core
