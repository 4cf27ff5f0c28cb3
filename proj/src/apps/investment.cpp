#include "sa/apps/investment.hpp"

#include <cmath>
#include <stdexcept>

#include "sa/apps/special.hpp"
#include "sa/innovations/rng.hpp"

namespace sa::apps {

void CirParams::validate() const {
    if (!(kappa > 0.0 && vartheta > 0.0 && sigma > 0.0))
        throw std::invalid_argument("CirParams: kappa, vartheta and sigma must be > 0");
}

double CirParams::moment(double a) const {
    validate();
    return gamma_fn(shape() + a) / gamma_fn(shape()) * std::pow(scale(), a);
}

void CobbDouglasParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("CobbDouglasParams: alpha must lie in (0,1)");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("CobbDouglasParams: beta must lie in (0,1)");
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("CobbDouglasParams: c must be > 0");
}

std::unique_ptr<innovations::EulerSource> cir_innovation_source(const CirParams& p, double gamma0, double r,
                                                                std::uint64_t seed, std::optional<double> y0) {
    p.validate();
    if (!(r > 0.0 && r <= 1.0 / 3.0))
        throw std::invalid_argument("cir_innovation_source: Euler exponent r must satisfy 0 < r <= 1/(q*-1) = 1/3 "
                                    "for Gaussian noise (q* = 4)");
    const double start = y0.value_or(p.vartheta);
    auto drift = [p](std::span<const double> y, std::span<double> out) { out[0] = p.kappa * (p.vartheta - y[0]); };
    auto diffusion = [p](std::span<const double> y, std::span<const double> u, std::span<double> out) {
        out[0] = p.sigma * std::sqrt(std::abs(y[0])) * u[0];
    };
    return std::make_unique<innovations::EulerSource>(
        std::vector<double>{start}, drift, diffusion, innovations::DecreasingStepSchedule(gamma0, r),
        std::make_unique<innovations::IidGaussianSource>(1, seed));
}

double capacity_from_tilde(double t, double beta) {
    const double rho = t < 0.0 ? 1.0 / (1.0 - beta) : 1.0;
    return std::exp(rho * std::asinh(t));
}

double capacity_chain_factor(double t, double beta) {
    const double rho = t < 0.0 ? 1.0 / (1.0 - beta) : 1.0;
    return rho * capacity_from_tilde(t, beta) / std::sqrt(t * t + 1.0);
}

double cobb_douglas_grad(double theta_tilde, double y, const CobbDouglasParams& p) {
    if (!(y >= 0.0)) throw std::invalid_argument("cobb_douglas_grad: y must be >= 0");
    const double theta = capacity_from_tilde(theta_tilde, p.beta);
    return -(p.beta * std::pow(y, p.alpha) * std::pow(theta, p.beta - 1.0) - p.c);
}

double theta_star_closed_form(const CirParams& cir, const CobbDouglasParams& cd) {
    cir.validate();
    cd.validate();
    const double nu = cir.shape();
    const double inner = cd.beta * gamma_fn(nu + cd.alpha) / (cd.c * gamma_fn(nu)) * std::pow(cir.scale(), cd.alpha);
    return std::pow(inner, 1.0 / (1.0 - cd.beta));
}

InvestmentResult run_investment(const InvestmentSetup& s, std::uint64_t seed) {
    s.cd.validate();
    auto source = cir_innovation_source(s.cir, s.euler_gamma0, s.euler_r, seed, s.y0);
    const auto cd = s.cd;
    const bool chain = s.chain_rule;

    core::ProcedureConfig cfg;
    cfg.dimension = 1;
    cfg.H = [cd, chain](std::span<const double> th, std::span<const double> y, std::span<double> out) {
        double g = cobb_douglas_grad(th[0], std::abs(y[0]), cd);
        if (chain) g *= capacity_chain_factor(th[0], cd.beta);
        out[0] = g;
    };
    cfg.theta0 = {s.theta_tilde0};
    cfg.steps = s.steps;
    cfg.horizon = s.horizon;
    cfg.record_stride = s.stride;
    cfg.monitors.push_back(
        {"theta", [beta = cd.beta](std::size_t, std::span<const double> th) { return capacity_from_tilde(th[0], beta); }});

    InvestmentResult res;
    res.trajectory = core::run(cfg, *source);
    res.theta_tilde = res.trajectory.final_theta[0];
    res.theta = capacity_from_tilde(res.theta_tilde, cd.beta);
    return res;
}

} // namespace sa::apps
