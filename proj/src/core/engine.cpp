#include "sa/core/engine.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sa/errors.hpp"
#include "sa/innovations/rng.hpp"

namespace sa::core {

namespace {

void check_finite(std::span<const double> v, const char* what, std::size_t step) {
    for (double x : v)
        if (!std::isfinite(x)) throw NumericError(what, step);
}

} // namespace

std::vector<double> sa_step(std::span<const double> theta, std::span<const double> y, double gamma,
                            const FieldFn& H, std::span<const double> dM, std::size_t step) {
    check_finite(theta, "sa_step: non-finite theta", step);
    check_finite(y, "sa_step: non-finite innovation", step);
    std::vector<double> h(theta.size());
    H(theta, y, h);
    check_finite(h, "sa_step: H returned a non-finite value", step);
    if (!dM.empty() && dM.size() != theta.size()) throw std::invalid_argument("sa_step: increment dimension");
    std::vector<double> out(theta.begin(), theta.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= gamma * (h[i] + (dM.empty() ? 0.0 : dM[i]));
    return out;
}

Trajectory run(const ProcedureConfig& cfg, innovations::InnovationSource& source) {
    const std::size_t d = cfg.dimension;
    if (d == 0) throw std::invalid_argument("run: dimension must be >= 1");
    if (!cfg.H) throw std::invalid_argument("run: H handle missing");
    if (cfg.theta0.size() != d) throw std::invalid_argument("run: theta0 has wrong dimension");
    if (cfg.record_stride == 0) throw std::invalid_argument("run: record stride must be >= 1");
    if (!(cfg.divergence_bound > 0.0)) throw std::invalid_argument("run: divergence bound must be > 0");
    check_finite(cfg.theta0, "run: non-finite theta0", 0);

    std::vector<std::string> names;
    for (const auto& m : cfg.monitors) names.push_back(m.name);
    Trajectory traj(d, names);

    std::vector<double> theta = cfg.theta0, h(d), dm(d), y(source.dimension()), mon(cfg.monitors.size());
    std::mt19937_64 rng(innovations::derive_seed(cfg.increment_seed, innovations::stream::martingale));

    auto record = [&](std::size_t n) {
        for (std::size_t k = 0; k < cfg.monitors.size(); ++k) mon[k] = cfg.monitors[k].value(n, theta);
        traj.record(n, theta, mon);
    };

    const auto t0 = std::chrono::steady_clock::now();
    record(0);
    for (std::size_t n = 0; n < cfg.horizon; ++n) {
        source.next(y);
        cfg.H(theta, y, h);
        check_finite(h, "run: H returned a non-finite value", n + 1);
        if (cfg.increment) {
            cfg.increment(n, theta, rng, dm);
            check_finite(dm, "run: non-finite martingale increment", n + 1);
        }
        const double g = cfg.steps(n + 1);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            theta[i] -= g * (h[i] + (cfg.increment ? dm[i] : 0.0));
            norm2 += theta[i] * theta[i];
        }
        if (cfg.post_step) cfg.post_step(n + 1, theta);
        const double norm = std::sqrt(norm2);
        if (!std::isfinite(norm)) throw NumericError("run: non-finite iterate", n + 1);
        if (norm > cfg.divergence_bound) throw DivergenceError(n + 1, norm, cfg.divergence_bound);
        if (cfg.observer) cfg.observer(n + 1, theta, y);
        if ((n + 1) % cfg.record_stride == 0 || n + 1 == cfg.horizon) record(n + 1);
    }
    traj.final_theta = theta;
    traj.steps_done = cfg.horizon;
    traj.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return traj;
}

} // namespace sa::core
