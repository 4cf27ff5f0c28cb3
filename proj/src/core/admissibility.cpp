#include "sa/core/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sa::core {

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::admissible: return "admissible";
    case Verdict::not_admissible: return "not-admissible";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(Regularity r) noexcept {
    return r == Regularity::finite_variation ? "finite-variation" : "lipschitz";
}

std::string AdmissibilityReport::describe() const {
    std::string s = to_string(verdict);
    if (!rule.empty()) s += " [" + rule + "]";
    for (const auto& f : failed) s += "; fails: " + f;
    return s;
}

namespace {

std::string fmt(const char* f, double x, double y = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, x, y);
    return buf;
}

// Exact consequence of the three conditions for gamma_n = c n^-a, eps_n ~ n^-beta (up to logs).
AdmissibilityReport power_rule(double a, double beta, std::string rule) {
    AdmissibilityReport rep;
    rep.rule = std::move(rule);
    if (!(beta > 0.0 && beta <= 1.0)) {
        rep.verdict = Verdict::not_admissible;
        rep.failed.push_back(fmt("beta = %g outside (0,1]", beta));
        return rep;
    }
    if (a > 1.0) rep.failed.push_back(fmt("a = %g > 1: sum gamma_n < inf", a));
    if (a <= 1.0 - beta)
        rep.failed.push_back(fmt("a = %g <= 1 - beta = %g: n eps_n gamma_n does not vanish", a, 1.0 - beta));
    if (a <= 1.0 - beta / 2.0)
        rep.failed.push_back(fmt("a = %g <= 1 - beta/2 = %g: sum n eps_n gamma_n^2 = inf", a, 1.0 - beta / 2.0));
    rep.verdict = rep.failed.empty() ? Verdict::admissible : Verdict::not_admissible;
    return rep;
}

} // namespace

AdmissibilityReport admissible_power_pair(double a, double beta) {
    return power_rule(a, beta, "gamma_n = c n^-a, eps_n = n^-beta: 1 - beta/2 < a <= 1");
}

RateSpec qsa_rate(Regularity regularity, std::size_t q) {
    if (q == 0) throw std::invalid_argument("qsa_rate: q must be >= 1");
    if (regularity == Regularity::finite_variation) return RateSpec::log_power(static_cast<double>(q), 1.0);
    return RateSpec::log_power(1.0, 1.0 / static_cast<double>(q));
}

AdmissibilityReport admissible_qsa(Regularity regularity, std::size_t q, double a) {
    if (q == 0) throw std::invalid_argument("admissible_qsa: q must be >= 1");
    if (regularity == Regularity::finite_variation)
        return power_rule(a, 1.0, "QSA finite variation, eps_n = (log n)^q/n: 1/2 < a <= 1");
    const double beta = 1.0 / static_cast<double>(q);
    return power_rule(a, beta,
                      fmt("QSA Lipschitz, eps_n = log n n^-1/q: 1 - 1/(2q) = %g < a <= 1", 1.0 - beta / 2.0));
}

AdmissibilityReport check_schedule_numeric(const StepSchedule& steps, const RateSpec& eps, std::size_t horizon,
                                           const ProbeTolerance& tol) {
    if (horizon < 10) throw std::invalid_argument("check_schedule_numeric: horizon must be >= 10");
    if (auto len = steps.length(); len && *len < horizon + 1)
        throw std::invalid_argument("check_schedule_numeric: tabulated schedule shorter than horizon + 1");

    AdmissibilityReport rep;
    {
        auto pr = probe_series([&](std::size_t n) { return steps(n); }, horizon);
        rep.conditions.push_back({"sum gamma_n = inf", series_diverges(pr.exponent, tol), pr.exponent,
                                  pr.partial_sums.back()});
    }
    {
        auto pr = probe_sequence(
            [&](std::size_t n) { return static_cast<double>(n) * eps(n) * steps(n); }, horizon);
        rep.conditions.push_back({"n eps_n gamma_n -> 0", sequence_vanishes(pr.exponent, tol), pr.exponent,
                                  pr.values.back()});
    }
    {
        auto term = [&](std::size_t n) {
            const double g = steps(n);
            const double dg = std::abs(steps(n + 1) - g);
            return static_cast<double>(n) * eps(n) * std::max(g * g, dg);
        };
        auto pr = probe_series(term, horizon);
        rep.conditions.push_back({"sum n eps_n max(gamma_n^2, |Delta gamma_n+1|) < inf",
                                  series_converges(pr.exponent, tol), pr.exponent, pr.partial_sums.back()});
    }
    bool all_hold = true;
    for (const auto& c : rep.conditions) {
        if (c.trend == Trend::fails) rep.failed.push_back(c.name);
        all_hold = all_hold && c.trend == Trend::holds;
    }
    rep.verdict = !rep.failed.empty() ? Verdict::not_admissible
                                      : (all_hold ? Verdict::admissible : Verdict::inconclusive);
    return rep;
}

} // namespace sa::core
