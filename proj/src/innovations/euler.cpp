#include "sa/innovations/euler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sa/errors.hpp"

namespace sa::innovations {

DecreasingStepSchedule::DecreasingStepSchedule(double g0, double exponent) : gamma0(g0), r(exponent) {
    if (!(g0 > 0.0) || !std::isfinite(g0)) throw std::invalid_argument("DecreasingStepSchedule: gamma0 must be > 0");
    if (!(exponent > 0.0 && exponent < 1.0))
        throw std::invalid_argument("DecreasingStepSchedule: exponent r must lie in (0,1)");
}

double DecreasingStepSchedule::operator()(std::size_t n) const {
    if (n == 0) throw std::out_of_range("DecreasingStepSchedule: index starts at 1");
    return gamma0 * std::pow(static_cast<double>(n), -r);
}

std::vector<double> euler_step(std::span<const double> y, const DriftFn& drift, const DiffusionFn& diffusion,
                               double gamma, std::span<const double> u, std::size_t step) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("euler_step: step must be > 0");
    const std::size_t d = y.size();
    std::vector<double> b(d), s(d), out(d);
    drift(y, b);
    diffusion(y, u, s);
    const double sg = std::sqrt(gamma);
    for (std::size_t i = 0; i < d; ++i) {
        if (!std::isfinite(b[i]) || !std::isfinite(s[i]))
            throw NumericError("euler_step: non-finite drift or diffusion", step);
        out[i] = y[i] + gamma * b[i] + sg * s[i];
        if (!std::isfinite(out[i])) throw NumericError("euler_step: non-finite state", step);
    }
    return out;
}

EulerSource::EulerSource(std::vector<double> y0, DriftFn drift, DiffusionFn diffusion,
                         DecreasingStepSchedule steps, std::unique_ptr<InnovationSource> noise)
    : y0_(std::move(y0)), y_(y0_), drift_(std::move(drift)), diffusion_(std::move(diffusion)), steps_(steps),
      noise_(std::move(noise)) {
    if (y0_.empty()) throw std::invalid_argument("EulerSource: empty initial state");
    if (!noise_) throw std::invalid_argument("EulerSource: noise source required");
    u_.resize(noise_->dimension());
}

EulerSource::EulerSource(const EulerSource& o)
    : y0_(o.y0_), y_(o.y_), drift_(o.drift_), diffusion_(o.diffusion_), steps_(o.steps_),
      noise_(o.noise_->clone()), u_(o.u_), n_(o.n_) {}

void EulerSource::next(std::span<double> out) {
    if (n_ > 0) {
        noise_->next(u_);
        y_ = euler_step(y_, drift_, diffusion_, steps_(n_), u_, n_);
    }
    std::copy(y_.begin(), y_.end(), out.begin());
    ++n_;
}

std::unique_ptr<InnovationSource> EulerSource::clone() const { return std::make_unique<EulerSource>(*this); }

std::unique_ptr<InnovationSource> EulerSource::substream(std::uint64_t block, std::uint64_t length) const {
    return std::make_unique<EulerSource>(y0_, drift_, diffusion_, steps_, noise_->substream(block, length));
}

const char* to_string(AveragingVerdict v) noexcept {
    switch (v) {
    case AveragingVerdict::averaging: return "averaging";
    case AveragingVerdict::not_averaging: return "not-averaging";
    case AveragingVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

AveragingReport averaging_system_check(const core::PowerSequence& gamma_bar, const core::PowerSequence& eta,
                                       std::size_t horizon) {
    using core::Trend;
    if (horizon < 10) throw std::invalid_argument("averaging_system_check: horizon must be >= 10");
    AveragingReport rep;

    // H_n is needed term by term; tabulate once.
    std::vector<double> H(horizon + 1, 0.0);
    for (std::size_t k = 1; k <= horizon; ++k) H[k] = H[k - 1] + eta(k);

    auto add = [&](std::string name, Trend t, double p, double v) {
        rep.conditions.push_back({std::move(name), t, p, v});
    };

    {
        auto pr = core::probe_sequence([&](std::size_t n) { return gamma_bar(n); }, horizon);
        add("lim gamma_bar_n = 0", core::sequence_vanishes(pr.exponent), pr.exponent, pr.values.back());
    }
    {
        auto term = [&](std::size_t n) {
            const double d = eta(n + 1) / gamma_bar(n + 1) - eta(n) / gamma_bar(n);
            return d > 0.0 ? d / H[n] : 0.0;
        };
        auto pr = core::probe_series(term, horizon);
        add("sum (1/H_n)(Delta eta/gamma_bar)_+ < inf", core::series_converges(pr.exponent), pr.exponent,
            pr.partial_sums.back());
    }
    {
        auto term = [&](std::size_t n) {
            const double x = eta(n) / (H[n] * std::sqrt(gamma_bar(n)));
            return x * x;
        };
        auto pr = core::probe_series(term, horizon);
        add("sum (eta_n/(H_n sqrt gamma_bar_n))^2 < inf", core::series_converges(pr.exponent), pr.exponent,
            pr.partial_sums.back());
    }
    {
        auto pr = core::probe_series([&](std::size_t n) { return gamma_bar(n); }, horizon);
        add("sum gamma_bar_n = inf", core::series_diverges(pr.exponent), pr.exponent, pr.partial_sums.back());
    }
    {
        auto pr = core::probe_series([&](std::size_t n) { return eta(n); }, horizon);
        add("sum eta_n = inf", core::series_diverges(pr.exponent), pr.exponent, pr.partial_sums.back());
    }

    bool any_fail = false, all_hold = true;
    for (const auto& c : rep.conditions) {
        any_fail = any_fail || c.trend == Trend::fails;
        all_hold = all_hold && c.trend == Trend::holds;
    }
    rep.numeric = any_fail ? AveragingVerdict::not_averaging
                           : (all_hold ? AveragingVerdict::averaging : AveragingVerdict::inconclusive);

    if (eta.exponent == 0.0 && eta.scale > 0.0 && gamma_bar.scale > 0.0) {
        const double r = gamma_bar.exponent;
        rep.closed_form = (r > 0.0 && r < 1.0);
        rep.rule = "gamma_bar_n = g0 n^-r with eta constant: averaging iff 0 < r < 1";
        rep.verdict = *rep.closed_form ? AveragingVerdict::averaging : AveragingVerdict::not_averaging;
    } else {
        rep.rule = "numeric partial-sum probe";
        rep.verdict = rep.numeric;
    }
    return rep;
}

} // namespace sa::innovations
