#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace sa::core {

enum class Trend { holds, fails, inconclusive };

const char* to_string(Trend t) noexcept;

/// Thresholds for reading exponents off finite horizons.
struct ProbeTolerance {
    /// Exponent margin beyond which a trend is called decisive.
    double decisive = 0.05;
    /// Exponents within this distance of the critical value are read as exactly critical
    /// (e.g. harmonic terms k^-1, which diverge).
    double critical = 2e-3;
};

/// Partial sums of a series at the checkpoints N/10, 2N/10, ..., N and the fitted decay
/// exponent p of its terms (t_k ~ C k^-p), estimated from the increments between checkpoints.
struct SeriesProbe {
    std::vector<std::size_t> checkpoints;
    std::vector<double> partial_sums;
    /// +inf when the tail increments vanish identically, NaN when no fit was possible.
    double exponent = 0.0;
};

SeriesProbe probe_series(const std::function<double(std::size_t)>& term, std::size_t horizon);

/// Values of a sequence at the same checkpoints and its fitted decay exponent (s_n ~ C n^-p).
struct SequenceProbe {
    std::vector<std::size_t> checkpoints;
    std::vector<double> values;
    double exponent = 0.0;
};

SequenceProbe probe_sequence(const std::function<double(std::size_t)>& value, std::size_t horizon);

/// Verdicts from fitted exponents.
Trend series_diverges(double exponent, const ProbeTolerance& tol = {});
Trend series_converges(double exponent, const ProbeTolerance& tol = {});
Trend sequence_vanishes(double exponent, const ProbeTolerance& tol = {});

/// One probed condition of a report.
struct ConditionCheck {
    std::string name;
    Trend trend = Trend::inconclusive;
    double exponent = 0.0;
    /// Partial sum (or sequence value) at the horizon.
    double value = 0.0;
};

/// Checkpoints N/10, ..., N (requires N >= 10).
std::vector<std::size_t> decile_checkpoints(std::size_t horizon);

} // namespace sa::core
