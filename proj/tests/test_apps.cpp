#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <omp.h>

#include "sa/apps/bandit.hpp"
#include "sa/apps/bestof.hpp"
#include "sa/apps/darkpool.hpp"
#include "sa/apps/investment.hpp"
#include "sa/apps/special.hpp"
#include "sa/apps/var_cvar.hpp"
#include "sa/core/step_schedule.hpp"
#include "sa/innovations/sources.hpp"

using namespace sa::apps;
using sa::core::StepSchedule;
using namespace sa::innovations;

// ---- gamma function

TEST_CASE("gamma function") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    for (double x = 0.05; x < 30.0; x += 0.37) {
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-10));
        CHECK(gamma_fn(x) == doctest::Approx(boost::math::tgamma(x)).epsilon(1e-13));
    }
    // 20-digit reference values
    const double xs[] = {2.5, 4.3, 0.1, 7.7, -0.5, -2.3, 10.2, 20.5};
    const double ref[] = {1.3293403881791370205, 8.8553433604540370189, 9.5135076986687318363,
                          2769.8303623273136603, -3.5449077018110320546, -1.4471073942559172639,
                          570499.02784103598123, 540624298233507504.47};
    for (int i = 0; i < 8; ++i) CHECK(gamma_fn(xs[i]) == doctest::Approx(ref[i]).epsilon(1e-13));
    CHECK_THROWS(gamma_fn(0.0));
    CHECK_THROWS(gamma_fn(-3.0));
}

// ---- best-of call

TEST_CASE("bestof_H by hand") {
    const BestOfCallParams p;
    const double at_zero = std::exp(-0.1) * 100.0 * (std::exp(0.055) - 1.0) - 30.75;
    for (double th : {0.0, 1.0, 2.5, 4.0}) CHECK(bestof_H(th, 0.0, 0.0, p) == doctest::Approx(at_zero));
    CHECK(at_zero == doctest::Approx(-25.634).epsilon(1e-4));
    CHECK(bestof_H(0.0, -10.0, 0.0, p) == -30.75);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 200; ++i) {
        const double th = 6.0 * nd(rng), z1 = nd(rng), z2 = nd(rng);
        CHECK(bestof_H(th, z1, 0.0, p) == doctest::Approx(bestof_H(2 * std::numbers::pi - th, z1, 0.0, p)));
        CHECK(bestof_H(th, z1, z2, p) == doctest::Approx(bestof_H(th + 2 * std::numbers::pi, z1, z2, p)));
    }
}

TEST_CASE("best-of price") {
    BestOfCallParams p;
    IidGaussianSource src(2, 1);
    CHECK(bs_bestof_price(p, -0.5, src, 1000000) == doctest::Approx(30.75).epsilon(0.05 / 30.75));

    BestOfCallParams k0 = p;
    k0.K = 1e-12;
    CHECK(bs_bestof_price(k0, 0.3, src, 200000) >= 100.0 - 0.3);

    BestOfCallParams flat = p;
    flat.sigma1 = flat.sigma2 = 1e-8;
    CHECK(bs_bestof_price(flat, 0.7, src, 10000) == doctest::Approx(100.0 * (1.0 - std::exp(-0.1))).epsilon(1e-6));
}

TEST_CASE("best-of price parallel equals serial") {
    omp_set_num_threads(4);
    const BestOfCallParams p;
    IidGaussianSource iid(2, 5);
    HaltonGaussianSource qmc(2);
    CHECK(bs_bestof_price(p, -0.2, iid, 100000, 4096) == serial::bs_bestof_price(p, -0.2, iid, 100000, 4096));
    CHECK(bs_bestof_price(p, 0.4, qmc, 100000, 4096) == serial::bs_bestof_price(p, 0.4, qmc, 100000, 4096));
}

TEST_CASE("implicit correlation") {
    const BestOfCallParams p;
    HaltonGaussianSource qmc(2);
    auto t = calibrate_correlation(p, qmc, StepSchedule::power(8.0, 1.0), 100000);
    CHECK(std::abs(std::cos(t.final_theta[0]) + 0.5) <= 0.02);
    CHECK(t.channel("rho").back() == std::cos(t.final_theta[0]));

    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        IidGaussianSource iid(2, seed);
        mean += std::cos(calibrate_correlation(p, iid, StepSchedule::power(8.0, 1.0), 100000).final_theta[0]) / 8;
    }
    CHECK(std::abs(mean + 0.5) <= 0.05);

    // round trip: market premium priced at rho = 0
    BestOfCallParams q = p;
    HaltonGaussianSource pricing(2);
    q.P_market = bs_bestof_price(p, 0.0, pricing, 1 << 20);
    HaltonGaussianSource qmc2(2);
    t = calibrate_correlation(q, qmc2, StepSchedule::power(8.0, 1.0), 100000);
    CHECK(std::abs(std::cos(t.final_theta[0])) <= 0.05);
}

// ---- VaR / CVaR

TEST_CASE("var_H and companion by hand") {
    CHECK(var_H(1.0, 0.5, 0.95) == 1.0);
    CHECK(var_H(1.0, 1.5, 0.95) == doctest::Approx(-19.0));
    CHECK(var_H(1.0, 1.0, 0.5) == -1.0);
    CHECK(cvar_companion_step(0.0, 1.0, 3.0, 0, 0.9) == cvar_v(1.0, 3.0, 0.9));
    CHECK(cvar_v(1.0, 3.0, 0.9) == doctest::Approx(21.0));
    CHECK(cvar_companion_step(0.4, 1.0, 0.5, 3, 0.9) == doctest::Approx(0.4 + (1.0 - 0.4) / 4));
}

TEST_CASE("companion with frozen theta is the running mean") {
    IidGaussianSource s(1, 8);
    const double th = 1.3, alpha = 0.9;
    double zeta = 0.0, y = 0.0;
    long double sum = 0.0;
    for (std::size_t n = 0; n < 100000; ++n) {
        s.next({&y, 1});
        zeta = cvar_companion_step(zeta, th, y, n, alpha);
        sum += cvar_v(th, y, alpha);
        if (n % 9973 == 0) CHECK(std::abs(zeta - double(sum / (n + 1))) < 1e-12);
    }
    CHECK(std::abs(zeta - double(sum / 100000)) < 1e-12);
}

TEST_CASE("var_H mean vanishes at the analytic quantile") {
    const double alpha = 0.95;
    const std::size_t M = 1000000;
    double uni = 0.0, expo = 0.0;
    const double q_uni = alpha, q_exp = -std::log(1.0 - alpha);
    for (std::size_t k = 0; k < M; ++k) {
        const double u = (k + 0.5) / M;
        uni += var_H(q_uni, u, alpha);
        expo += var_H(q_exp, -std::log1p(-u), alpha);
    }
    CHECK(std::abs(uni / M) <= 2.0 / (M * (1.0 - alpha)));
    CHECK(std::abs(expo / M) <= 2.0 / (M * (1.0 - alpha)));
}

TEST_CASE("var-cvar runs") {
    const boost::math::normal_distribution<double> nd;
    const double var_t = boost::math::quantile(nd, 0.95), cvar_t = boost::math::pdf(nd, var_t) / 0.05;
    CHECK(var_t == doctest::Approx(1.64485).epsilon(1e-5));
    CHECK(cvar_t == doctest::Approx(2.06271).epsilon(1e-5));

    IidGaussianSource g(1, 1);
    auto r = var_cvar_run(g, 0.95, default_var_steps(), 1000000);
    CHECK(std::abs(r.var - var_t) <= 0.02);
    CHECK(std::abs(r.cvar - cvar_t) <= 0.03);

    IidUniformSource u(1, 1);
    r = var_cvar_run(u, 0.95, default_var_steps(), 1000000);
    CHECK(std::abs(r.var - 0.95) <= 0.02);
    CHECK(std::abs(r.cvar - 0.975) <= 0.03);

    IidGaussianSource g2(1, 2);
    r = var_cvar_run(g2, 0.5, default_var_steps(), 200000);
    CHECK(std::abs(r.var) <= 0.02);

    // gain 4 n^-0.75 sits on the boundary of the admissible band; smoke test only
    IidGaussianSource g3(1, 1);
    r = var_cvar_run(g3, 0.95, StepSchedule::power(4.0, 0.75), 1000000);
    CHECK(std::abs(r.var - var_t) <= 0.1);
    CHECK(std::abs(r.cvar - cvar_t) <= 0.1);
}

// ---- ergodic investment

TEST_CASE("cir source") {
    const CirParams p;
    CHECK_NOTHROW(cir_innovation_source(p, 1.0, 1.0 / 3.0, 1));
    CHECK_THROWS(cir_innovation_source(p, 1.0, 0.5, 1));
    CHECK_FALSE(p.feller_satisfied());

    CirParams quiet = p;
    quiet.sigma = 1e-12;
    auto s = cir_innovation_source(quiet, 1.0, 1.0 / 3.0, 1);
    double y = 0.0;
    s->next({&y, 1});
    CHECK(y == 1.0);
    s->next({&y, 1});
    CHECK(std::abs(y - 1.0) < 1e-10);
    auto s2 = cir_innovation_source(quiet, 1.0, 1.0 / 3.0, 1, 2.0);
    s2->next({&y, 1});
    s2->next({&y, 1});
    CHECK(y == doctest::Approx(2.0 - 1.0).epsilon(1e-9)); // 2 + 1*(1 - 2)
}

TEST_CASE("cobb-douglas gradient") {
    const CobbDouglasParams p;
    CHECK(capacity_from_tilde(0.0, p.beta) == 1.0);
    CHECK(cobb_douglas_grad(0.0, 2.0, p) == doctest::Approx(-(p.beta * std::pow(2.0, p.alpha) - p.c)));
    const double ystar = std::pow(p.c / p.beta, 1.0 / p.alpha);
    CHECK(std::abs(cobb_douglas_grad(0.0, ystar, p)) < 1e-15);
    CHECK(cobb_douglas_grad(1e20, 1.0, p) == doctest::Approx(p.c).epsilon(1e-3));
    CHECK_THROWS(cobb_douglas_grad(0.0, -1.0, p));
    for (double t = -5.0; t <= 5.0; t += 0.25) {
        const double h = 1e-6;
        const double fd = (capacity_from_tilde(t + h, p.beta) - capacity_from_tilde(t - h, p.beta)) / (2 * h);
        if (std::abs(t) > 1e-3) CHECK(capacity_chain_factor(t, p.beta) == doctest::Approx(fd).epsilon(1e-6));
        if (t > -5.0) CHECK(capacity_from_tilde(t, p.beta) > capacity_from_tilde(t - 0.25, p.beta));
    }
}

TEST_CASE("theta star closed form") {
    const CirParams cir;
    const CobbDouglasParams cd;
    CHECK(theta_star_closed_form(cir, cd) == doctest::Approx(2.3611067577920248328).epsilon(1e-12));

    CobbDouglasParams tiny = cd;
    tiny.alpha = 1e-10;
    CHECK(theta_star_closed_form(cir, tiny) ==
          doctest::Approx(std::pow(cd.beta / cd.c, 1.0 / (1.0 - cd.beta))).epsilon(1e-8));

    CobbDouglasParams unit = cd;
    unit.beta = 0.5;
    unit.c = 0.5 * cir.moment(cd.alpha);
    CHECK(theta_star_closed_form(cir, unit) == doctest::Approx(1.0).epsilon(1e-12));

    for (double k : {0.5, 1.0, 2.0})
        for (double s : {0.5, 1.5})
            for (double b = 0.1; b < 0.95; b += 0.2) {
                CirParams c2{k, 1.0, s};
                CobbDouglasParams q{0.8, b, 0.5};
                const double nu = 2 * k / (s * s);
                const double oracle = std::pow(b * boost::math::tgamma(nu + 0.8) / (0.5 * boost::math::tgamma(nu)) *
                                                   std::pow(s * s / (2 * k), 0.8),
                                               1.0 / (1.0 - b));
                CHECK(theta_star_closed_form(c2, q) == doctest::Approx(oracle).epsilon(1e-10));
            }
}

TEST_CASE("investment modes agree on the target") {
    InvestmentSetup s;
    s.horizon = 50000;
    const double target = theta_star_closed_form(s.cir, s.cd);
    double lit = 0.0, chain = 0.0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        lit += run_investment(s, seed).theta / 8;
        s.chain_rule = true;
        chain += run_investment(s, seed).theta / 8;
        s.chain_rule = false;
    }
    CHECK(lit == doctest::Approx(target).epsilon(0.15));
    CHECK(chain == doctest::Approx(target).epsilon(0.15));
}

// ---- two-armed bandit

TEST_CASE("bandit step") {
    CHECK(bandit_step(0.5, 0.3, true, false, 0.1) == doctest::Approx(0.55));
    CHECK(bandit_step(0.5, 0.7, false, true, 0.1) == doctest::Approx(0.45));
    for (double u : {1e-300, 0.4, 1.0}) // U uniform on (0,1]
        for (bool a : {false, true})
            for (bool b : {false, true}) {
                CHECK(bandit_step(1.0, u, a, b, 0.7) == 1.0);
                CHECK(bandit_step(0.0, u, a, b, 0.7) == 0.0);
            }
    CHECK_THROWS(bandit_step(0.5, 0.5, true, true, 1.5));
}

TEST_CASE("bandit runs") {
    BanditInnovations always_a(std::make_unique<IidEvents>(1.0, 0.0, 1), 2);
    auto r = bandit_run(always_a, StepSchedule::power(1.0, 0.9), 20000, 0.5, 1);
    const auto th = r.trajectory.channel("theta_0");
    for (std::size_t i = 1; i < th.size(); ++i) CHECK(th[i] >= th[i - 1]);

    BanditInnovations trap(std::make_unique<IidEvents>(0.6, 0.4, 1), 2);
    r = bandit_run(trap, StepSchedule::power(1.0, 0.9), 20000, 0.0, 100);
    for (double v : r.trajectory.channel("theta_0")) CHECK(v == 0.0);

    BanditInnovations dep(std::make_unique<Ar1ThresholdEvents>(0.6, 0.4, 0.5, 3), 4);
    r = bandit_run(dep, StepSchedule::power(1.0, 0.9), 20000, 0.5, 10);
    for (double v : r.trajectory.channel("theta_0")) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    BanditInnovations big(std::make_unique<IidEvents>(0.6, 0.4, 1), 2);
    CHECK_THROWS(bandit_run(big, StepSchedule::power(2.0, 0.9), 10));
}

TEST_CASE("ar1 threshold events keep the target frequencies") {
    Ar1ThresholdEvents ev(0.6, 0.4, 0.5, 9);
    std::size_t na = 0, nb = 0;
    const std::size_t n = 200000;
    for (std::size_t i = 0; i < n; ++i) {
        bool a = false, b = false;
        ev.next(a, b);
        na += a;
        nb += b;
    }
    CHECK(double(na) / n == doctest::Approx(0.6).epsilon(0.02));
    CHECK(double(nb) / n == doctest::Approx(0.4).epsilon(0.03));
}

TEST_CASE("bandit replications parallel equals serial") {
    omp_set_num_threads(4);
    BanditSetup s;
    s.horizon = 5000;
    CHECK(bandit_replications(s, 10, 12) == serial::bandit_replications(s, 10, 12));
    s.events = EventKind::ar1;
    CHECK(bandit_replications(s, 10, 12) == serial::bandit_replications(s, 10, 12));
}

// ---- dark pool

TEST_CASE("darkpool_H by hand") {
    const std::vector<double> r{0.5, 0.5}, D{1.0, 0.0}, rho{0.02, 0.04};
    const auto h = darkpool_H(r, 1.0, D, rho);
    CHECK(h[0] == doctest::Approx(0.01));
    CHECK(h[1] == doctest::Approx(-0.01));

    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<double> r3{0.2, 0.3, 0.5}, Dinf{inf, inf, inf}, Dz{0, 0, 0}, rho3{0.01, 0.02, 0.06};
    const auto hi = darkpool_H(r3, 2.0, Dinf, rho3);
    for (int i = 0; i < 3; ++i) CHECK(hi[i] == doctest::Approx(2.0 * (rho3[i] - 0.03)));
    for (double x : darkpool_H(r3, 2.0, Dz, rho3)) CHECK(x == 0.0);
}

TEST_CASE("darkpool field sums to zero") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 10000; ++t) {
        const std::size_t N = 2 + t % 5;
        std::vector<double> r(N), D(N), rho(N);
        double s = 0.0;
        for (auto& x : r) s += (x = u(rng));
        for (auto& x : r) x /= s;
        for (auto& x : D) x = 2.0 * u(rng);
        for (auto& x : rho) x = 0.1 * u(rng);
        const double V = 0.1 + 3.0 * u(rng);
        const auto h = darkpool_H(r, V, D, rho);
        double sum = 0.0;
        for (double x : h) sum += x;
        CHECK(std::abs(sum) <= 1e-15 * V * N);
    }
}

TEST_CASE("darkpool step") {
    const std::vector<double> r{0.5, 0.5}, D{1.0, 0.0}, rho{0.02, 0.04};
    CHECK(darkpool_step(r, 1.0, D, rho, 0.0) == r);
    const auto n = darkpool_step(r, 1.0, D, rho, 1.0);
    CHECK(n[0] == doctest::Approx(0.51));
    CHECK(n[1] == doctest::Approx(0.49));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> r4{0.1, 0.2, 0.3, 0.4}, D4(4), rho4{0.0, 0.02, 0.04, 0.06};
        for (auto& x : D4) x = u(rng);
        SafeguardLog log;
        const auto next = darkpool_step(r4, 1.0, D4, rho4, 0.5, &log);
        if (log.triggers() == 0) CHECK(std::abs(next[0] + next[1] + next[2] + next[3] - 1.0) <= 1e-14);
    }
    std::vector<double> neg{-0.1, 0.6, 0.5};
    CHECK(simplex_safeguard(neg));
    CHECK(neg[0] == 0.0);
    CHECK(neg[1] + neg[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(neg[1] / neg[2] == doctest::Approx(0.6 / 0.5));
}

TEST_CASE("relative cost reduction") {
    const std::vector<double> r{0.5, 0.5}, D{1.0, 0.0}, rho{0.02, 0.04}, Dz{0.0, 0.0};
    CHECK(relative_cost_reduction(r, 1.0, D, rho) == doctest::Approx(0.01));
    CHECK(relative_cost_reduction(r, 1.0, Dz, rho) == 0.0);
    const std::vector<double> one{1.0}, big{5.0}, rho1{0.03};
    CHECK(relative_cost_reduction(one, 2.0, big, rho1) == doctest::Approx(0.03));
}

TEST_CASE("synthetic dark-pool stream") {
    const std::vector<double> V{1.0, 2.0, 0.5, 1.5};
    const std::vector<std::vector<double>> S{{1.0, 3.0, 2.0, 0.5}, {2.0, 2.0, 2.0, 2.0}};
    const std::vector<double> alpha{0.0, 1.0}, beta{0.3, 0.4};
    const auto D = synthetic_darkpool_stream(V, S, alpha, beta);
    for (int t = 0; t < 4; ++t) {
        CHECK(D[0][t] == doctest::Approx(0.3 * V[t]));
        CHECK(D[1][t] == doctest::Approx(0.4 * 1.25));
    }
    SyntheticMarket m;
    m.beta = {0.1, 0.2, 0.3, 0.2};
    m.alpha = {0.4, 0.6, 0.8, 0.2};
    const auto series = generate_darkpool_series(m, 100000, 1);
    double ev = 0.0, ed = 0.0;
    for (double v : series.V) ev += v;
    for (const auto& d : series.D)
        for (double x : d) ed += x;
    CHECK(ev > ed);
    CHECK(ed == doctest::Approx(0.8 * ev).epsilon(1e-9));
}

TEST_CASE("darkpool oracle") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DarkPoolSeries sym;
    sym.D.resize(2);
    for (int t = 0; t < 2000; ++t) {
        const double d1 = u(rng), d2 = u(rng);
        for (int k = 0; k < 2; ++k) {
            sym.V.push_back(1.0);
            sym.D[0].push_back(k ? d2 : d1);
            sym.D[1].push_back(k ? d1 : d2);
        }
    }
    const std::vector<double> rho{0.03, 0.03};
    auto o = darkpool_oracle(sym, rho);
    CHECK(std::abs(o.r[0] - 0.5) <= 0.01);

    DarkPoolSeries dead = sym;
    std::fill(dead.D[1].begin(), dead.D[1].end(), 0.0);
    o = darkpool_oracle(dead, rho);
    CHECK(o.r[0] == 1.0);

    omp_set_num_threads(4);
    SyntheticMarket m;
    m.beta = {0.3, 0.4, 0.2};
    m.alpha = {0.5, 0.5, 0.2};
    const auto sample = generate_darkpool_series(m, 5000, 3);
    const std::vector<double> rho3{0.02, 0.04, 0.05};
    const auto par = darkpool_oracle(sample, rho3), ser = serial::darkpool_oracle(sample, rho3);
    CHECK(par.r == ser.r);
    CHECK(par.value == ser.value);
}

TEST_CASE("darkpool run keeps the hyperplane") {
    SyntheticMarket m;
    m.beta = {0.3, 0.4};
    m.alpha = {0.5, 0.5};
    SeriesSource src(generate_darkpool_series(m, 20000, 2));
    const std::vector<double> rho{0.03, 0.05};
    const auto res = darkpool_run(src, rho, StepSchedule::power(10.0, 0.8), 20000);
    CHECK(res.max_sum_deviation <= 1e-12);
    CHECK(res.safeguard.triggers() == 0);
    for (double s : res.trajectory.channel("sum_r")) CHECK(std::abs(s - 1.0) <= 1e-12);
}
