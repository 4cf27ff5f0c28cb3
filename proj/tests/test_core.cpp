#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "sa/core/admissibility.hpp"
#include "sa/core/engine.hpp"
#include "sa/core/series_probe.hpp"
#include "sa/core/step_schedule.hpp"
#include "sa/errors.hpp"
#include "sa/innovations/sources.hpp"

using namespace sa::core;
using sa::innovations::IidGaussianSource;

namespace {

FieldFn mean_field() {
    return [](std::span<const double> t, std::span<const double> y, std::span<double> o) {
        for (std::size_t i = 0; i < t.size(); ++i) o[i] = t[i] - y[i];
    };
}

ProcedureConfig mean_config(std::size_t N) {
    ProcedureConfig cfg;
    cfg.dimension = 1;
    cfg.H = mean_field();
    cfg.theta0 = {0.0};
    cfg.steps = StepSchedule::power(1.0, 1.0);
    cfg.horizon = N;
    return cfg;
}

} // namespace

TEST_CASE("step schedules") {
    const auto p = StepSchedule::power(8.0, 1.0);
    CHECK(p(1) == 8.0);
    CHECK(p(4) == 2.0);
    CHECK_THROWS(StepSchedule::power(-1.0, 1.0));
    CHECK_THROWS(StepSchedule::tabulated({0.5, 0.6}));
    CHECK_THROWS(StepSchedule::tabulated({0.5, -0.1}));
    const auto t = StepSchedule::tabulated({0.5, 0.5, 0.25});
    CHECK(t(3) == 0.25);
    CHECK(*t.length() == 3);
    CHECK_THROWS(t(4));
}

TEST_CASE("sa_step by hand") {
    const FieldFn zero = [](std::span<const double>, std::span<const double>, std::span<double> o) {
        std::fill(o.begin(), o.end(), 0.0);
    };
    const std::vector<double> one{1.0, 1.0}, y{0.0, 0.0};
    CHECK(sa_step(one, y, 0.5, zero) == one);
    const std::vector<double> two{2.0}, y0{0.0};
    CHECK(sa_step(two, y0, 0.1, mean_field())[0] == doctest::Approx(1.8));
    CHECK(sa_step(two, std::vector<double>{3.0}, 0.0, mean_field())[0] == 2.0);
    const std::vector<double> dm{1.0};
    CHECK(sa_step(two, y0, 0.1, mean_field(), dm)[0] == doctest::Approx(1.7));
}

TEST_CASE("run is the running mean for H = theta - y, gamma = 1/n") {
    const std::size_t N = 100000;
    IidGaussianSource src(1, 11), ref(1, 11);
    auto cfg = mean_config(N);
    cfg.record_stride = 1000;
    const auto traj = run(cfg, src);
    double sum = 0.0, y = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        ref.next({&y, 1});
        sum += y;
    }
    CHECK(std::abs(traj.final_theta[0] - sum / N) < 1e-12);
    CHECK(std::abs(traj.final_theta[0]) < 0.05);
    CHECK(traj.steps().front() == 0);
    CHECK(traj.steps().back() == N);
    CHECK(traj.size() == N / 1000 + 1);
}

TEST_CASE("run edge cases and determinism") {
    IidGaussianSource s0(1, 3);
    auto cfg = mean_config(0);
    cfg.theta0 = {0.7};
    const auto t0 = run(cfg, s0);
    CHECK(t0.size() == 1);
    CHECK(t0.theta(0)[0] == 0.7);

    cfg = mean_config(12345);
    cfg.record_stride = 7;
    IidGaussianSource a(1, 5), b(1, 5);
    CHECK(run(cfg, a).to_csv() == run(cfg, b).to_csv());

    cfg.steps = StepSchedule::power(3.0, 0.0); // |1 - 3| > 1: blows up
    IidGaussianSource c(1, 5);
    CHECK_THROWS_AS(run(cfg, c), sa::DivergenceError);

    cfg = mean_config(10);
    cfg.H = [](std::span<const double>, std::span<const double>, std::span<double> o) { o[0] = NAN; };
    IidGaussianSource d(1, 5);
    CHECK_THROWS_AS(run(cfg, d), sa::NumericError);
}

TEST_CASE("trajectory csv and channels") {
    Trajectory t(2, {"m"});
    const std::vector<double> th{0.1, 0.2}, m{3.0};
    t.record(0, th, m);
    t.record(5, th, m);
    CHECK_THROWS(t.record(5, th, m));
    std::ostringstream os;
    t.write_csv(os);
    CHECK(os.str() == "n,theta_0,theta_1,m\n0,0.10000000000000001,0.20000000000000001,3\n"
                      "5,0.10000000000000001,0.20000000000000001,3\n");
    CHECK(t.channel("m") == std::vector<double>{3.0, 3.0});
    CHECK_THROWS_WITH(t.channel("x"), doctest::Contains("theta_0"));
}

TEST_CASE("admissible power pairs") {
    CHECK(admissible_power_pair(1.0, 0.5).admissible());
    auto r = admissible_power_pair(0.4, 0.5);
    CHECK(r.verdict == Verdict::not_admissible);
    CHECK(r.describe().find("1 - beta") != std::string::npos);
    CHECK(admissible_power_pair(1.2, 0.5).verdict == Verdict::not_admissible);
    CHECK(admissible_power_pair(0.7, 0.5).verdict == Verdict::not_admissible); // inside (1-b, 1-b/2]
    CHECK(admissible_power_pair(0.8, 0.5).admissible());
}

TEST_CASE("admissible qsa") {
    CHECK(admissible_qsa(Regularity::lipschitz, 2, 1.0).admissible());
    CHECK(admissible_qsa(Regularity::lipschitz, 4, 0.7).verdict == Verdict::not_admissible);
    CHECK(admissible_qsa(Regularity::finite_variation, 3, 0.6).admissible());
    CHECK(admissible_qsa(Regularity::finite_variation, 3, 0.5).verdict == Verdict::not_admissible);
}

TEST_CASE("numeric admissibility probe examples") {
    auto r = check_schedule_numeric(StepSchedule::power(1.0, 1.0), RateSpec::power(0.5), 1000000);
    CHECK(r.verdict == Verdict::admissible);

    r = check_schedule_numeric(StepSchedule::power(0.1, 0.0), RateSpec::power(0.5), 1000000);
    CHECK(r.verdict == Verdict::not_admissible);
    CHECK(r.conditions[1].trend == Trend::fails);

    for (double beta : {0.25, 0.5, 1.0}) {
        r = check_schedule_numeric(StepSchedule::power(1.0, 2.0), RateSpec::power(beta), 1000000);
        CHECK(r.verdict == Verdict::not_admissible);
        CHECK(r.conditions[0].trend == Trend::fails);
    }

    std::vector<double> tab(2001);
    for (std::size_t n = 1; n <= tab.size(); ++n) tab[n - 1] = 1.0 / n;
    r = check_schedule_numeric(StepSchedule::tabulated(tab), RateSpec::power(0.5), 2000);
    CHECK(r.verdict != Verdict::not_admissible);
    CHECK_THROWS(check_schedule_numeric(StepSchedule::tabulated(tab), RateSpec::power(0.5), 2001));
}

TEST_CASE("closed form and numeric probe never contradict on a 20-point grid") {
    const double as[] = {0.35, 0.55, 0.78, 0.93, 1.0};
    const double betas[] = {0.3, 0.6, 0.8, 1.0};
    int agree = 0;
    for (double a : as)
        for (double b : betas) {
            const auto cf = admissible_power_pair(a, b);
            const auto nu = check_schedule_numeric(StepSchedule::power(1.0, a), RateSpec::power(b), 1000000);
            CAPTURE(a);
            CAPTURE(b);
            if (nu.verdict == Verdict::inconclusive) continue;
            CHECK(nu.verdict == cf.verdict);
            agree += nu.verdict == cf.verdict;
        }
    CHECK(agree >= 18);
}

TEST_CASE("series probe") {
    const auto harmonic = probe_series([](std::size_t k) { return 1.0 / k; }, 100000);
    CHECK(harmonic.exponent == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(series_diverges(harmonic.exponent) == Trend::holds);
    const auto sq = probe_series([](std::size_t k) { return 1.0 / (double(k) * k); }, 100000);
    CHECK(series_converges(sq.exponent) == Trend::holds);
    const auto zero = probe_series([](std::size_t) { return 0.0; }, 1000);
    CHECK(zero.exponent == std::numeric_limits<double>::infinity());
    const auto seq = probe_sequence([](std::size_t n) { return 3.0 / std::sqrt(double(n)); }, 10000);
    CHECK(seq.exponent == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sequence_vanishes(seq.exponent) == Trend::holds);
    CHECK(decile_checkpoints(100) == std::vector<std::size_t>{10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
}
