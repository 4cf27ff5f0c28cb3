#include "sa/apps/darkpool.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sa/innovations/sources.hpp"

namespace sa::apps {

namespace {

void check_lengths(std::size_t r, std::size_t d, std::size_t rho, const char* who) {
    if (r != d || r != rho || r == 0) throw std::invalid_argument(std::string(who) + ": length mismatch");
}

} // namespace

std::vector<double> darkpool_H(std::span<const double> r, double V, std::span<const double> D,
                               std::span<const double> rho) {
    check_lengths(r.size(), D.size(), rho.size(), "darkpool_H");
    if (!(V > 0.0)) throw std::invalid_argument("darkpool_H: V must be > 0");
    const std::size_t N = r.size();
    std::vector<double> h(N);
    double mean = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        h[i] = (r[i] * V < D[i]) ? rho[i] : 0.0;
        mean += h[i];
    }
    mean /= static_cast<double>(N);
    for (auto& x : h) x = V * (x - mean);
    return h;
}

bool simplex_safeguard(std::span<double> r) {
    double deficit = 0.0, positive = 0.0;
    for (double x : r) {
        if (x < 0.0)
            deficit -= x;
        else
            positive += x;
    }
    if (deficit == 0.0) return false;
    if (!(positive > deficit)) throw std::runtime_error("simplex_safeguard: allocation has no positive mass");
    const double keep = 1.0 - deficit / positive;
    for (auto& x : r) x = x < 0.0 ? 0.0 : x * keep;
    return true;
}

std::vector<double> darkpool_step(std::span<const double> r, double V, std::span<const double> D,
                                  std::span<const double> rho, double gamma, SafeguardLog* log, std::size_t step) {
    const auto h = darkpool_H(r, V, D, rho);
    std::vector<double> out(r.begin(), r.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += gamma * h[i];
    if (simplex_safeguard(out) && log) log->steps.push_back(step);
    return out;
}

double relative_cost_reduction(std::span<const double> r, double V, std::span<const double> D,
                               std::span<const double> rho) {
    check_lengths(r.size(), D.size(), rho.size(), "relative_cost_reduction");
    if (!(V > 0.0)) throw std::invalid_argument("relative_cost_reduction: V must be > 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += rho[i] * std::min(r[i] * V, D[i]);
    return acc / V;
}

std::vector<std::vector<double>> synthetic_darkpool_stream(std::span<const double> V,
                                                           const std::vector<std::vector<double>>& S,
                                                           std::span<const double> alpha,
                                                           std::span<const double> beta) {
    const std::size_t N = S.size();
    if (alpha.size() != N || beta.size() != N) throw std::invalid_argument("synthetic_darkpool_stream: length mismatch");
    if (V.empty()) throw std::invalid_argument("synthetic_darkpool_stream: empty volume series");
    const double EV = std::accumulate(V.begin(), V.end(), 0.0) / static_cast<double>(V.size());
    std::vector<std::vector<double>> D(N, std::vector<double>(V.size()));
    for (std::size_t i = 0; i < N; ++i) {
        if (S[i].size() != V.size()) throw std::invalid_argument("synthetic_darkpool_stream: series length mismatch");
        if (!(alpha[i] >= 0.0 && alpha[i] <= 1.0))
            throw std::invalid_argument("synthetic_darkpool_stream: alpha_i must lie in [0,1]");
        if (!(beta[i] > 0.0)) throw std::invalid_argument("synthetic_darkpool_stream: beta_i must be > 0");
        const double ES = std::accumulate(S[i].begin(), S[i].end(), 0.0) / static_cast<double>(S[i].size());
        if (ES == 0.0) throw std::invalid_argument("synthetic_darkpool_stream: ES_i = 0");
        for (std::size_t t = 0; t < V.size(); ++t)
            D[i][t] = beta[i] * ((1.0 - alpha[i]) * V[t] + alpha[i] * S[i][t] * EV / ES);
    }
    return D;
}

DarkPoolSeries generate_darkpool_series(const SyntheticMarket& m, std::size_t length, std::uint64_t seed) {
    const std::size_t N = m.beta.size();
    if (N == 0 || m.alpha.size() != N) throw std::invalid_argument("generate_darkpool_series: beta/alpha mismatch");
    if (length == 0) throw std::invalid_argument("generate_darkpool_series: empty series");
    if (!(std::abs(m.load) <= 1.0)) throw std::invalid_argument("generate_darkpool_series: |load| must be <= 1");
    const double a = m.ar_coefficient;
    innovations::Ar1Source x(N + 1, a, seed, 0.0, std::sqrt(1.0 - a * a));
    std::vector<double> buf(N + 1);
    for (std::size_t t = 0; t < m.burn_in; ++t) x.next(buf);

    DarkPoolSeries s;
    s.V.resize(length);
    s.S.assign(N, std::vector<double>(length));
    const double idio = std::sqrt(1.0 - m.load * m.load);
    for (std::size_t t = 0; t < length; ++t) {
        x.next(buf);
        s.V[t] = m.v0 * std::exp(m.vol * buf[0] - 0.5 * m.vol * m.vol);
        for (std::size_t i = 0; i < N; ++i) s.S[i][t] = std::exp(m.vol * (m.load * buf[0] + idio * buf[i + 1]));
    }
    s.D = synthetic_darkpool_stream(s.V, s.S, m.alpha, m.beta);
    return s;
}

SeriesSource::SeriesSource(DarkPoolSeries series) : series_(std::move(series)) {
    if (series_.length() == 0 || series_.pools() == 0) throw std::invalid_argument("SeriesSource: empty series");
}

void SeriesSource::next(std::span<double> out) {
    out[0] = series_.V[t_];
    for (std::size_t i = 0; i < series_.pools(); ++i) out[i + 1] = series_.D[i][t_];
    t_ = (t_ + 1) % series_.length();
}

std::unique_ptr<innovations::InnovationSource> SeriesSource::substream(std::uint64_t block,
                                                                       std::uint64_t length) const {
    auto s = std::make_unique<SeriesSource>(series_);
    s->t_ = static_cast<std::size_t>((block * length) % series_.length());
    return s;
}

namespace {

std::vector<std::vector<double>> simplex_grid(std::size_t N, double resolution) {
    if (N != 2 && N != 3) throw std::invalid_argument("darkpool_oracle: N must be 2 or 3");
    if (!(resolution > 0.0 && resolution <= 0.01))
        throw std::invalid_argument("darkpool_oracle: resolution must lie in (0, 0.01]");
    const auto M = static_cast<std::size_t>(std::llround(1.0 / resolution));
    std::vector<std::vector<double>> grid;
    const double h = 1.0 / static_cast<double>(M);
    for (std::size_t i = 0; i <= M; ++i) {
        if (N == 2) {
            grid.push_back({static_cast<double>(i) * h, static_cast<double>(M - i) * h});
            continue;
        }
        for (std::size_t j = 0; i + j <= M; ++j)
            grid.push_back({static_cast<double>(i) * h, static_cast<double>(j) * h, static_cast<double>(M - i - j) * h});
    }
    return grid;
}

double objective(const DarkPoolSeries& s, std::span<const double> rho, std::span<const double> r) {
    double total = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        double acc = 0.0;
        for (std::size_t t = 0; t < s.length(); ++t) acc += std::min(r[i] * s.V[t], s.D[i][t]);
        total += rho[i] * acc / static_cast<double>(s.length());
    }
    return total;
}

OracleResult pick(const std::vector<std::vector<double>>& grid, const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] > values[best]) best = k;
    return {grid[best], values[best]};
}

void check_oracle(const DarkPoolSeries& s, std::span<const double> rho) {
    if (rho.size() != s.pools()) throw std::invalid_argument("darkpool_oracle: rho length mismatch");
    if (s.length() == 0) throw std::invalid_argument("darkpool_oracle: empty sample");
}

} // namespace

OracleResult darkpool_oracle(const DarkPoolSeries& sample, std::span<const double> rho, double resolution) {
    check_oracle(sample, rho);
    const auto grid = simplex_grid(sample.pools(), resolution);
    std::vector<double> values(grid.size());
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < grid.size(); ++k) values[k] = objective(sample, rho, grid[k]);
    return pick(grid, values);
}

namespace serial {
OracleResult darkpool_oracle(const DarkPoolSeries& sample, std::span<const double> rho, double resolution) {
    check_oracle(sample, rho);
    const auto grid = simplex_grid(sample.pools(), resolution);
    std::vector<double> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) values[k] = objective(sample, rho, grid[k]);
    return pick(grid, values);
}
} // namespace serial

DarkPoolResult darkpool_run(innovations::InnovationSource& source, std::span<const double> rho_in,
                            const core::StepSchedule& steps, std::size_t horizon, std::vector<double> r0,
                            std::size_t stride, std::size_t renormalize_every) {
    const std::size_t N = rho_in.size();
    if (N < 2) throw std::invalid_argument("darkpool_run: at least 2 pools required");
    if (source.dimension() != N + 1) throw std::invalid_argument("darkpool_run: source must yield (V, D_1..D_N)");
    for (double x : rho_in)
        if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("darkpool_run: rebates must lie in [0,1)");
    if (r0.empty()) r0.assign(N, 1.0 / static_cast<double>(N));
    if (r0.size() != N) throw std::invalid_argument("darkpool_run: r0 length mismatch");
    if (std::abs(std::accumulate(r0.begin(), r0.end(), 0.0) - 1.0) > 1e-12)
        throw std::invalid_argument("darkpool_run: r0 must lie on the simplex");
    for (double x : r0)
        if (x < 0.0) throw std::invalid_argument("darkpool_run: r0 must be nonnegative");
    if (renormalize_every == 0) throw std::invalid_argument("darkpool_run: renormalization period must be >= 1");

    const std::vector<double> rho(rho_in.begin(), rho_in.end());
    DarkPoolResult res;
    std::vector<double> prev = r0;
    double cr_sum = 0.0;
    std::size_t cr_count = 0;

    core::ProcedureConfig cfg;
    cfg.dimension = N;
    cfg.H = [rho](std::span<const double> r, std::span<const double> y, std::span<double> out) {
        const auto h = darkpool_H(r, y[0], y.subspan(1), rho);
        for (std::size_t i = 0; i < h.size(); ++i) out[i] = -h[i];
    };
    cfg.theta0 = r0;
    cfg.steps = steps;
    cfg.horizon = horizon;
    cfg.record_stride = stride;
    cfg.post_step = [&res, renormalize_every](std::size_t n, std::span<double> r) {
        if (simplex_safeguard(r)) res.safeguard.steps.push_back(n);
        if (n % renormalize_every == 0) {
            const double s = std::accumulate(r.begin(), r.end(), 0.0);
            for (auto& x : r) x /= s;
        }
    };
    cfg.observer = [&](std::size_t, std::span<const double> r, std::span<const double> y) {
        cr_sum += relative_cost_reduction(prev, y[0], y.subspan(1), rho);
        ++cr_count;
        prev.assign(r.begin(), r.end());
        const double dev = std::abs(std::accumulate(r.begin(), r.end(), 0.0) - 1.0);
        res.max_sum_deviation = std::max(res.max_sum_deviation, dev);
    };
    cfg.monitors.push_back({"sum_r", [](std::size_t, std::span<const double> r) {
                                return std::accumulate(r.begin(), r.end(), 0.0);
                            }});
    cfg.monitors.push_back({"cost_reduction_mean", [&](std::size_t, std::span<const double>) {
                                return cr_count ? cr_sum / static_cast<double>(cr_count) : 0.0;
                            }});

    res.trajectory = core::run(cfg, source);
    res.r = res.trajectory.final_theta;
    res.cost_reduction_mean = cr_count ? cr_sum / static_cast<double>(cr_count) : 0.0;
    return res;
}

} // namespace sa::apps
