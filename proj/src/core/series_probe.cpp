#include "sa/core/series_probe.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sa::core {

const char* to_string(Trend t) noexcept {
    switch (t) {
    case Trend::holds: return "holds";
    case Trend::fails: return "fails";
    case Trend::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<std::size_t> decile_checkpoints(std::size_t horizon) {
    if (horizon < 10) throw std::invalid_argument("probe: horizon must be >= 10");
    std::vector<std::size_t> cps(10);
    for (std::size_t j = 1; j <= 10; ++j) cps[j - 1] = j * horizon / 10;
    return cps;
}

namespace {

// log of the integral of x^-p over [a, b], stable near p = 1.
double log_power_integral(double a, double b, double p) {
    const double log_ratio = std::log(b / a);
    const double u = (1.0 - p) * log_ratio;
    const double shape = (std::abs(u) < 1e-12) ? log_ratio : std::expm1(u) / (1.0 - p);
    return (1.0 - p) * std::log(a) + std::log(shape);
}

double residual_variance(const std::vector<double>& log_inc, const std::vector<double>& lo,
                         const std::vector<double>& hi, double p) {
    const std::size_t m = log_inc.size();
    std::vector<double> r(m);
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        r[i] = log_inc[i] - log_power_integral(lo[i], hi[i], p);
        mean += r[i];
    }
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (double x : r) var += (x - mean) * (x - mean);
    return var;
}

} // namespace

SeriesProbe probe_series(const std::function<double(std::size_t)>& term, std::size_t horizon) {
    SeriesProbe probe;
    probe.checkpoints = decile_checkpoints(horizon);
    std::vector<double> increments;
    double total = 0.0;
    std::size_t k = 1;
    for (std::size_t cp : probe.checkpoints) {
        double block = 0.0;
        for (; k <= cp; ++k) block += term(k);
        total += block;
        probe.partial_sums.push_back(total);
        increments.push_back(block);
    }

    // Fit on the tail intervals (the first one is dominated by early terms).
    std::vector<double> log_inc, lo, hi;
    bool all_zero = true;
    bool fit_ok = true;
    for (std::size_t j = 1; j < increments.size(); ++j) {
        if (probe.checkpoints[j] == probe.checkpoints[j - 1]) continue;
        if (increments[j] != 0.0) all_zero = false;
        if (!(increments[j] > 0.0) || !std::isfinite(increments[j])) {
            fit_ok = false;
            continue;
        }
        log_inc.push_back(std::log(increments[j]));
        lo.push_back(static_cast<double>(probe.checkpoints[j - 1]) + 0.5);
        hi.push_back(static_cast<double>(probe.checkpoints[j]) + 0.5);
    }
    if (all_zero) {
        probe.exponent = std::numeric_limits<double>::infinity();
        return probe;
    }
    if (!fit_ok || log_inc.size() < 3) {
        probe.exponent = std::numeric_limits<double>::quiet_NaN();
        return probe;
    }

    // Coarse scan, then golden-section refinement around the best grid point.
    double best_p = -4.0;
    double best = residual_variance(log_inc, lo, hi, best_p);
    for (double p = -4.0; p <= 6.0; p += 0.01) {
        const double v = residual_variance(log_inc, lo, hi, p);
        if (v < best) {
            best = v;
            best_p = p;
        }
    }
    double a = best_p - 0.01, b = best_p + 0.01;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = residual_variance(log_inc, lo, hi, c), fd = residual_variance(log_inc, lo, hi, d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - phi * (b - a);
            fc = residual_variance(log_inc, lo, hi, c);
        } else {
            a = c; c = d; fc = fd;
            d = a + phi * (b - a);
            fd = residual_variance(log_inc, lo, hi, d);
        }
    }
    probe.exponent = 0.5 * (a + b);
    return probe;
}

SequenceProbe probe_sequence(const std::function<double(std::size_t)>& value, std::size_t horizon) {
    SequenceProbe probe;
    probe.checkpoints = decile_checkpoints(horizon);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    bool usable = true;
    for (std::size_t cp : probe.checkpoints) {
        const double v = std::abs(value(cp));
        probe.values.push_back(v);
        if (!(v > 0.0) || !std::isfinite(v)) {
            usable = false;
            continue;
        }
        const double x = std::log(static_cast<double>(cp));
        const double y = std::log(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (probe.values.back() == 0.0) {
        probe.exponent = std::numeric_limits<double>::infinity();
        return probe;
    }
    if (!usable || m < 3) {
        probe.exponent = std::numeric_limits<double>::quiet_NaN();
        return probe;
    }
    const double mm = static_cast<double>(m);
    probe.exponent = -(mm * sxy - sx * sy) / (mm * sxx - sx * sx);
    return probe;
}

Trend series_diverges(double p, const ProbeTolerance& tol) {
    if (std::isnan(p)) return Trend::inconclusive;
    if (p <= 1.0 + tol.critical) return Trend::holds;
    if (p >= 1.0 + tol.decisive) return Trend::fails;
    return Trend::inconclusive;
}

Trend series_converges(double p, const ProbeTolerance& tol) {
    if (std::isnan(p)) return Trend::inconclusive;
    if (p >= 1.0 + tol.decisive) return Trend::holds;
    if (p <= 1.0 + tol.critical) return Trend::fails;
    return Trend::inconclusive;
}

Trend sequence_vanishes(double p, const ProbeTolerance& tol) {
    if (std::isnan(p)) return Trend::inconclusive;
    if (p >= tol.decisive) return Trend::holds;
    if (p <= tol.critical) return Trend::fails;
    return Trend::inconclusive;
}

} // namespace sa::core
