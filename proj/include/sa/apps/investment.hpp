#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>

#include "sa/core/engine.hpp"
#include "sa/innovations/euler.hpp"

namespace sa::apps {

/// dY = kappa(vartheta - Y)dt + sigma sqrt|Y| dW.
struct CirParams {
    double kappa = 1.0;
    double vartheta = 1.0;
    double sigma = 1.5;

    /// Requires kappa, vartheta, sigma > 0. The condition 2 kappa vartheta > sigma^2 is reported, not enforced.
    void validate() const;
    bool feller_satisfied() const noexcept { return 2.0 * kappa * vartheta > sigma * sigma; }
    /// Shape 2 kappa vartheta / sigma^2 of the Gamma invariant law.
    double shape() const noexcept { return 2.0 * kappa * vartheta / (sigma * sigma); }
    /// Scale sigma^2 / (2 kappa).
    double scale() const noexcept { return sigma * sigma / (2.0 * kappa); }
    /// E[Y^a] under the invariant law.
    double moment(double a) const;
};

/// C(theta, y) = y^alpha theta^beta - c theta.
struct CobbDouglasParams {
    double alpha = 0.8;
    double beta = 0.7;
    double c = 0.5;

    void validate() const;
};

/// Euler scheme for the CIR dynamics with gamma_bar_n = gamma0 n^-r and N(0,1) noise; Y_0 defaults to vartheta.
/// Requires 0 < r <= 1/3 (Gaussian noise).
std::unique_ptr<innovations::EulerSource> cir_innovation_source(const CirParams& p, double gamma0, double r,
                                                                std::uint64_t seed,
                                                                std::optional<double> y0 = std::nullopt);

/// theta = (t + sqrt(t^2 + 1))^rho(t), rho = 1/(1-beta) for t < 0, 1 otherwise.
double capacity_from_tilde(double theta_tilde, double beta);
/// d theta / d theta_tilde.
double capacity_chain_factor(double theta_tilde, double beta);

/// -(beta y^alpha theta^(beta-1) - c) at theta = capacity_from_tilde(theta_tilde).
double cobb_douglas_grad(double theta_tilde, double y, const CobbDouglasParams& p);

/// (beta Gamma(nu + alpha)/(c Gamma(nu)) (sigma^2/2kappa)^alpha)^(1/(1-beta)), nu = 2 kappa vartheta/sigma^2.
double theta_star_closed_form(const CirParams& cir, const CobbDouglasParams& cd);

struct InvestmentSetup {
    CirParams cir{};
    CobbDouglasParams cd{};
    double euler_gamma0 = 1.0;
    double euler_r = 1.0 / 3.0;
    std::optional<double> y0;
    core::StepSchedule steps = core::StepSchedule::power(5.0, 1.0);
    std::size_t horizon = 100000;
    double theta_tilde0 = 0.0;
    /// Multiply the gradient by d theta/d theta_tilde.
    bool chain_rule = false;
    std::size_t stride = 100;
};

struct InvestmentResult {
    double theta = 0.0;       // capacity after the change of variable
    double theta_tilde = 0.0;
    core::Trajectory trajectory{1};
};

/// Monitor "theta" = capacity_from_tilde(theta_tilde_n). Negative Euler states enter through |y|.
InvestmentResult run_investment(const InvestmentSetup& s, std::uint64_t seed);

} // namespace sa::apps
