#include <benchmark/benchmark.h>

#include "sa/apps/bandit.hpp"
#include "sa/apps/bestof.hpp"
#include "sa/apps/darkpool.hpp"
#include "sa/innovations/discrepancy.hpp"
#include "sa/innovations/sources.hpp"

using namespace sa;

static void price_parallel(benchmark::State& state) {
    const apps::BestOfCallParams p;
    innovations::IidGaussianSource src(2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(apps::bs_bestof_price(p, -0.5, src, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void price_serial(benchmark::State& state) {
    const apps::BestOfCallParams p;
    innovations::IidGaussianSource src(2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(apps::serial::bs_bestof_price(p, -0.5, src, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void discrepancy_parallel(benchmark::State& state) {
    const auto pts = innovations::halton_points(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(innovations::star_discrepancy_exact(pts));
}

static void discrepancy_serial(benchmark::State& state) {
    const auto pts = innovations::halton_points(state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(innovations::serial::star_discrepancy_exact(pts));
}

static apps::DarkPoolSeries oracle_sample() {
    apps::SyntheticMarket m;
    m.beta = {0.3, 0.4, 0.2};
    m.alpha = {0.5, 0.5, 0.2};
    return apps::generate_darkpool_series(m, 20000, 1);
}

static void oracle_parallel(benchmark::State& state) {
    const auto s = oracle_sample();
    const std::vector<double> rho{0.02, 0.04, 0.05};
    for (auto _ : state) benchmark::DoNotOptimize(apps::darkpool_oracle(s, rho));
}

static void oracle_serial(benchmark::State& state) {
    const auto s = oracle_sample();
    const std::vector<double> rho{0.02, 0.04, 0.05};
    for (auto _ : state) benchmark::DoNotOptimize(apps::serial::darkpool_oracle(s, rho));
}

static void bandit_parallel(benchmark::State& state) {
    apps::BanditSetup s;
    s.horizon = 20000;
    for (auto _ : state) benchmark::DoNotOptimize(apps::bandit_replications(s, 1, state.range(0)));
}

static void bandit_serial(benchmark::State& state) {
    apps::BanditSetup s;
    s.horizon = 20000;
    for (auto _ : state) benchmark::DoNotOptimize(apps::serial::bandit_replications(s, 1, state.range(0)));
}

BENCHMARK(price_parallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(price_serial)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(discrepancy_parallel)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(discrepancy_serial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(oracle_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(oracle_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bandit_parallel)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bandit_serial)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
