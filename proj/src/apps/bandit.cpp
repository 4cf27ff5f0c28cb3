#include "sa/apps/bandit.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "sa/innovations/rng.hpp"

namespace sa::apps {

double bandit_step(double theta, double u, bool a_occurred, bool b_occurred, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("bandit_step: gamma must lie in (0,1]");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("bandit_step: theta must lie in [0,1]");
    const double up = (u <= theta && a_occurred) ? 1.0 - theta : 0.0;
    const double down = (u > theta && b_occurred) ? theta : 0.0;
    return theta + gamma * (up - down);
}

namespace {
void check_prob(double p, const char* who) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(who) + ": probabilities must lie in [0,1]");
}

double threshold(double p) {
    if (p <= 0.0) return -INFINITY;
    if (p >= 1.0) return INFINITY;
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}
} // namespace

IidEvents::IidEvents(double pA, double pB, std::uint64_t seed)
    : pA_(pA), pB_(pB), engine_(innovations::derive_seed(seed, innovations::stream::source)) {
    check_prob(pA, "IidEvents");
    check_prob(pB, "IidEvents");
}

void IidEvents::next(bool& a, bool& b) {
    a = innovations::uniform01(engine_) < pA_;
    b = innovations::uniform01(engine_) < pB_;
}

Ar1ThresholdEvents::Ar1ThresholdEvents(double pA, double pB, double a, std::uint64_t seed)
    : tA_(threshold(pA)), tB_(threshold(pB)), ar_(2, a, seed, 0.0, std::sqrt(1.0 - a * a)) {
    check_prob(pA, "Ar1ThresholdEvents");
    check_prob(pB, "Ar1ThresholdEvents");
}

void Ar1ThresholdEvents::next(bool& a, bool& b) {
    double x[2];
    ar_.next(x);
    a = x[0] <= tA_;
    b = x[1] <= tB_;
}

BanditInnovations::BanditInnovations(std::unique_ptr<EventStream> events, std::uint64_t uniform_seed)
    : events_(std::move(events)), seed_(uniform_seed),
      engine_(innovations::derive_seed(uniform_seed, innovations::stream::aux)) {
    if (!events_) throw std::invalid_argument("BanditInnovations: event stream required");
}

BanditInnovations::BanditInnovations(const BanditInnovations& o)
    : events_(o.events_->clone()), seed_(o.seed_), engine_(o.engine_) {}

void BanditInnovations::next(std::span<double> out) {
    bool a = false, b = false;
    events_->next(a, b);
    out[0] = innovations::uniform01_open_left(engine_);
    out[1] = a ? 1.0 : 0.0;
    out[2] = b ? 1.0 : 0.0;
}

std::unique_ptr<innovations::InnovationSource> BanditInnovations::clone() const {
    return std::make_unique<BanditInnovations>(*this);
}

std::unique_ptr<innovations::InnovationSource> BanditInnovations::substream(std::uint64_t, std::uint64_t) const {
    throw std::logic_error("BanditInnovations: no blocked substreams; replicate with distinct seeds");
}

const char* to_string(Terminal t) noexcept {
    switch (t) {
    case Terminal::near_one: return "near-1";
    case Terminal::near_zero: return "near-0";
    case Terminal::undecided: return "undecided";
    }
    return "?";
}

Terminal classify_terminal(double theta) {
    if (theta > 0.99) return Terminal::near_one;
    if (theta < 0.01) return Terminal::near_zero;
    return Terminal::undecided;
}

BanditResult bandit_run(innovations::InnovationSource& innov, const core::StepSchedule& steps, std::size_t horizon,
                        double theta0, std::size_t stride) {
    if (innov.dimension() != 3) throw std::invalid_argument("bandit_run: innovations must be (U, 1_A, 1_B)");
    if (!(theta0 >= 0.0 && theta0 <= 1.0)) throw std::invalid_argument("bandit_run: theta0 must lie in [0,1]");
    if (horizon > 0 && steps(1) > 1.0)
        throw std::invalid_argument("bandit_run: gamma_1 > 1 would break the [0,1] invariant");

    core::ProcedureConfig cfg;
    cfg.dimension = 1;
    cfg.H = [](std::span<const double> th, std::span<const double> y, std::span<double> out) {
        const double t = th[0];
        const double up = (y[0] <= t && y[1] != 0.0) ? 1.0 - t : 0.0;
        const double down = (y[0] > t && y[2] != 0.0) ? t : 0.0;
        out[0] = -(up - down);
    };
    cfg.theta0 = {theta0};
    cfg.steps = steps;
    cfg.horizon = horizon;
    cfg.record_stride = stride;

    BanditResult res;
    res.trajectory = core::run(cfg, innov);
    res.theta = res.trajectory.final_theta[0];
    res.terminal = classify_terminal(res.theta);
    return res;
}

std::unique_ptr<innovations::InnovationSource> make_bandit_innovations(const BanditSetup& s, std::uint64_t seed) {
    std::unique_ptr<EventStream> ev;
    if (s.events == EventKind::iid)
        ev = std::make_unique<IidEvents>(s.pA, s.pB, seed);
    else
        ev = std::make_unique<Ar1ThresholdEvents>(s.pA, s.pB, s.ar_coefficient, seed);
    return std::make_unique<BanditInnovations>(std::move(ev), seed);
}

namespace {
double replicate_one(const BanditSetup& s, std::uint64_t seed) {
    auto innov = make_bandit_innovations(s, seed);
    return bandit_run(*innov, s.steps, s.horizon, s.theta0, s.horizon > 0 ? s.horizon : 1).theta;
}
} // namespace

std::vector<double> bandit_replications(const BanditSetup& s, std::uint64_t base_seed, std::size_t count) {
    std::vector<double> out(count);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < count; ++i) {
        try {
            out[i] = replicate_one(s, base_seed + i);
        } catch (...) {
#pragma omp critical
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

namespace serial {
std::vector<double> bandit_replications(const BanditSetup& s, std::uint64_t base_seed, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = replicate_one(s, base_seed + i);
    return out;
}
} // namespace serial

} // namespace sa::apps
