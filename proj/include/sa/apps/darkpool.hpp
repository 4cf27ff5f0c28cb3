#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sa/core/engine.hpp"
#include "sa/innovations/sources.hpp"

namespace sa::apps {

/// H_i = V(rho_i 1{r_i V < D_i} - (1/N) sum_j rho_j 1{r_j V < D_j}).
std::vector<double> darkpool_H(std::span<const double> r, double V, std::span<const double> D,
                               std::span<const double> rho);

/// Safeguard triggers (step indices).
struct SafeguardLog {
    std::vector<std::size_t> steps;
    std::size_t triggers() const noexcept { return steps.size(); }
};

/// Clips negative components to 0 and removes the deficit proportionally from the positive ones.
/// Returns true when it had to act.
bool simplex_safeguard(std::span<double> r);

/// r + gamma H(r, V, D), then the safeguard (logged into `log` when it fires).
std::vector<double> darkpool_step(std::span<const double> r, double V, std::span<const double> D,
                                  std::span<const double> rho, double gamma, SafeguardLog* log = nullptr,
                                  std::size_t step = 0);

/// sum rho_i min(r_i V, D_i) / V.
double relative_cost_reduction(std::span<const double> r, double V, std::span<const double> D,
                               std::span<const double> rho);

/// D_i = beta_i((1-alpha_i) V + alpha_i S_i EV/ES_i) per time step; EV, ES_i are the series means.
/// S is pool-major: S[i][t].
std::vector<std::vector<double>> synthetic_darkpool_stream(std::span<const double> V,
                                                           const std::vector<std::vector<double>>& S,
                                                           std::span<const double> alpha,
                                                           std::span<const double> beta);

/// Stationary synthetic market: x_V and x_i are AR(1) with unit stationary variance,
/// V = v0 exp(vol x_V - vol^2/2), S_i = exp(vol (load x_V + sqrt(1-load^2) x_i)).
struct SyntheticMarket {
    std::vector<double> beta;
    std::vector<double> alpha;
    double ar_coefficient = 0.5;
    double vol = 0.6;
    double load = 0.6;
    double v0 = 1.0;
    std::size_t burn_in = 1000;
};

struct DarkPoolSeries {
    std::vector<double> V;
    std::vector<std::vector<double>> S; // pool-major
    std::vector<std::vector<double>> D; // pool-major
    std::size_t pools() const noexcept { return D.size(); }
    std::size_t length() const noexcept { return V.size(); }
};

DarkPoolSeries generate_darkpool_series(const SyntheticMarket& m, std::size_t length, std::uint64_t seed);

/// Replays a series as innovations (V, D_1, ..., D_N); wraps around at the end.
class SeriesSource final : public innovations::InnovationSource {
public:
    explicit SeriesSource(DarkPoolSeries series);

    std::size_t dimension() const noexcept override { return 1 + series_.pools(); }
    std::string_view kind() const noexcept override { return "darkpool-series"; }
    void next(std::span<double> out) override;
    std::unique_ptr<InnovationSource> clone() const override { return std::make_unique<SeriesSource>(*this); }
    std::unique_ptr<InnovationSource> substream(std::uint64_t block, std::uint64_t length) const override;

private:
    DarkPoolSeries series_;
    std::size_t t_ = 0;
};

struct OracleResult {
    std::vector<double> r;
    double value = 0.0;
};

/// Grid argmax of the empirical objective sum_i rho_i mean(min(r_i V, D_i)) over the simplex
/// (N in {2,3}, resolution <= 0.01). Ties resolve to the first grid point.
OracleResult darkpool_oracle(const DarkPoolSeries& sample, std::span<const double> rho, double resolution = 0.01);

namespace serial {
OracleResult darkpool_oracle(const DarkPoolSeries& sample, std::span<const double> rho, double resolution = 0.01);
}

struct DarkPoolResult {
    std::vector<double> r;
    double max_sum_deviation = 0.0; // max over all steps of |sum r - 1|
    double cost_reduction_mean = 0.0;
    SafeguardLog safeguard;
    core::Trajectory trajectory{1};
};

/// Runs the allocation recursion over `source` ((V, D) innovations). Monitors "sum_r" and
/// "cost_reduction_mean" (running mean of relative_cost_reduction at the pre-update allocation).
/// Renormalizes exactly every `renormalize_every` steps.
DarkPoolResult darkpool_run(innovations::InnovationSource& source, std::span<const double> rho,
                            const core::StepSchedule& steps, std::size_t horizon, std::vector<double> r0 = {},
                            std::size_t stride = 100, std::size_t renormalize_every = 10000);

} // namespace sa::apps
