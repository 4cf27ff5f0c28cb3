#include "sa/apps/bestof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sa::apps {

void BestOfCallParams::validate() const {
    if (!(x1 > 0.0 && x2 > 0.0)) throw std::invalid_argument("BestOfCallParams: initial prices must be > 0");
    if (!(sigma1 > 0.0 && sigma2 > 0.0)) throw std::invalid_argument("BestOfCallParams: volatilities must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("BestOfCallParams: maturity must be > 0");
    if (!(K > 0.0)) throw std::invalid_argument("BestOfCallParams: strike must be > 0");
    if (!std::isfinite(r) || !std::isfinite(P_market)) throw std::invalid_argument("BestOfCallParams: non-finite");
}

double bestof_payoff(double theta, double z1, double z2, const BestOfCallParams& p) {
    const double sT = std::sqrt(p.T);
    const double mu1 = p.r - 0.5 * p.sigma1 * p.sigma1;
    const double mu2 = p.r - 0.5 * p.sigma2 * p.sigma2;
    const double a1 = p.x1 * std::exp(mu1 * p.T + p.sigma1 * sT * z1);
    const double a2 = p.x2 * std::exp(mu2 * p.T + p.sigma2 * sT * (z1 * std::cos(theta) + z2 * std::sin(theta)));
    return std::exp(-p.r * p.T) * std::max(std::max(a1, a2) - p.K, 0.0);
}

double bestof_H(double theta, double z1, double z2, const BestOfCallParams& p) {
    return bestof_payoff(theta, z1, z2, p) - p.P_market;
}

namespace {

double block_sum(const BestOfCallParams& p, double theta, const innovations::InnovationSource& source,
                 std::size_t block, std::size_t block_size, std::size_t count) {
    auto s = source.substream(block, block_size);
    double z[2];
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        s->next(z);
        acc += bestof_payoff(theta, z[0], z[1], p);
    }
    return acc;
}

void check_price_args(const innovations::InnovationSource& source, double rho, std::size_t n,
                      std::size_t block_size) {
    if (source.dimension() != 2) throw std::invalid_argument("bs_bestof_price: source must be 2-dimensional");
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("bs_bestof_price: rho must lie in [-1,1]");
    if (n == 0 || block_size == 0) throw std::invalid_argument("bs_bestof_price: n and block size must be >= 1");
}

} // namespace

double bs_bestof_price(const BestOfCallParams& p, double rho, const innovations::InnovationSource& source,
                       std::size_t n, std::size_t block_size) {
    check_price_args(source, rho, n, block_size);
    const double theta = std::acos(rho);
    const std::size_t blocks = (n + block_size - 1) / block_size;
    std::vector<double> sums(blocks);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t b = 0; b < blocks; ++b)
        sums[b] = block_sum(p, theta, source, b, block_size, std::min(block_size, n - b * block_size));
    double total = 0.0;
    for (double s : sums) total += s;
    return total / static_cast<double>(n);
}

namespace serial {
double bs_bestof_price(const BestOfCallParams& p, double rho, const innovations::InnovationSource& source,
                       std::size_t n, std::size_t block_size) {
    check_price_args(source, rho, n, block_size);
    const double theta = std::acos(rho);
    const std::size_t blocks = (n + block_size - 1) / block_size;
    double total = 0.0;
    for (std::size_t b = 0; b < blocks; ++b)
        total += block_sum(p, theta, source, b, block_size, std::min(block_size, n - b * block_size));
    return total / static_cast<double>(n);
}
} // namespace serial

core::Trajectory calibrate_correlation(const BestOfCallParams& p, innovations::InnovationSource& source,
                                       const core::StepSchedule& steps, std::size_t horizon, double theta0,
                                       std::size_t stride) {
    p.validate();
    if (source.dimension() != 2) throw std::invalid_argument("calibrate_correlation: source must be 2-dimensional");
    core::ProcedureConfig cfg;
    cfg.dimension = 1;
    cfg.H = [p](std::span<const double> th, std::span<const double> z, std::span<double> out) {
        out[0] = bestof_H(th[0], z[0], z[1], p);
    };
    cfg.theta0 = {theta0};
    cfg.steps = steps;
    cfg.horizon = horizon;
    cfg.record_stride = stride;
    cfg.monitors.push_back({"rho", [](std::size_t, std::span<const double> th) { return std::cos(th[0]); }});
    return core::run(cfg, source);
}

} // namespace sa::apps
