#pragma once

#include <cstddef>

#include "sa/core/engine.hpp"
#include "sa/innovations/sources.hpp"

namespace sa::apps {

/// Best-of call on two Black-Scholes assets.
struct BestOfCallParams {
    double x1 = 100.0, x2 = 100.0;
    double r = 0.10;
    double sigma1 = 0.30, sigma2 = 0.30;
    double T = 1.0;
    double K = 100.0;
    double P_market = 30.75;

    /// Throws unless prices, volatilities, T and K are strictly positive.
    void validate() const;
};

/// e^{-rT}(max(X_T^1, X_T^2) - K)_+ with correlation driven by the angle theta.
double bestof_payoff(double theta, double z1, double z2, const BestOfCallParams& p);

/// bestof_payoff - P_market.
double bestof_H(double theta, double z1, double z2, const BestOfCallParams& p);

/// (Q)MC premium at correlation rho with n draws from `source` (dimension 2), split into blocks
/// drawn from source.substream(block, block_size) and summed in block order.
double bs_bestof_price(const BestOfCallParams& p, double rho, const innovations::InnovationSource& source,
                       std::size_t n, std::size_t block_size = 1 << 14);

namespace serial {
double bs_bestof_price(const BestOfCallParams& p, double rho, const innovations::InnovationSource& source,
                       std::size_t n, std::size_t block_size = 1 << 14);
}

/// theta_{n+1} = theta_n - gamma_{n+1} H(theta_n, Z_{n+1}); monitor "rho" = cos theta.
core::Trajectory calibrate_correlation(const BestOfCallParams& p, innovations::InnovationSource& source,
                                       const core::StepSchedule& steps, std::size_t horizon,
                                       double theta0 = 0.0, std::size_t stride = 100);

} // namespace sa::apps
