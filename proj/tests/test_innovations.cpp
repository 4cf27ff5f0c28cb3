#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <omp.h>

#include "sa/errors.hpp"
#include "sa/innovations/discrepancy.hpp"
#include "sa/innovations/euler.hpp"
#include "sa/innovations/halton.hpp"
#include "sa/innovations/sources.hpp"

using namespace sa::innovations;

namespace {

// Exhaustive corner enumeration: every box [0,x] and [0,x) with x on the grid of point
// coordinates (plus 1) per axis, counting by direct comparison.
double brute_star_discrepancy(const std::vector<std::vector<double>>& pts) {
    const std::size_t n = pts.size(), q = pts[0].size();
    std::vector<std::vector<double>> grid(q);
    for (std::size_t k = 0; k < q; ++k) {
        for (const auto& p : pts) grid[k].push_back(p[k]);
        grid[k].push_back(1.0);
    }
    std::vector<std::size_t> idx(q, 0);
    double best = 0.0;
    while (true) {
        double vol = 1.0;
        for (std::size_t k = 0; k < q; ++k) vol *= grid[k][idx[k]];
        std::size_t closed = 0, open = 0;
        for (const auto& p : pts) {
            bool c = true, o = true;
            for (std::size_t k = 0; k < q; ++k) {
                c = c && p[k] <= grid[k][idx[k]];
                o = o && p[k] < grid[k][idx[k]];
            }
            closed += c;
            open += o;
        }
        best = std::max(best, std::abs(double(closed) / n - vol));
        best = std::max(best, std::abs(double(open) / n - vol));
        std::size_t k = 0;
        while (k < q && ++idx[k] == grid[k].size()) idx[k++] = 0;
        if (k == q) break;
    }
    return best;
}

PointSet to_set(const std::vector<std::vector<double>>& pts) {
    std::vector<double> flat;
    for (const auto& p : pts) flat.insert(flat.end(), p.begin(), p.end());
    return PointSet(pts[0].size(), flat);
}

std::vector<double> take(InnovationSource& s, std::size_t n) {
    std::vector<double> out, y(s.dimension());
    for (std::size_t i = 0; i < n; ++i) {
        s.next(y);
        out.insert(out.end(), y.begin(), y.end());
    }
    return out;
}

} // namespace

TEST_CASE("radical inverse by hand") {
    CHECK(radical_inverse(1, 2) == 0.5);
    CHECK(radical_inverse(3, 2) == 0.75);
    CHECK(radical_inverse(1, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(radical_inverse(6, 2) == 0.375); // 110 -> 0.011
    CHECK(radical_inverse(5, 3) == doctest::Approx(7.0 / 9.0)); // 12 -> 0.21
    CHECK_THROWS(radical_inverse(1, 1));
}

TEST_CASE("halton points") {
    auto p = halton_point(1, 2);
    CHECK(p[0] == 0.5);
    CHECK(p[1] == doctest::Approx(1.0 / 3.0));
    p = halton_point(2, 2);
    CHECK(p[0] == 0.25);
    CHECK(p[1] == doctest::Approx(2.0 / 3.0));
    CHECK(halton_point(4, 1)[0] == 0.125);
    const auto primes = first_primes(6);
    CHECK(std::vector<std::uint32_t>(primes.begin(), primes.end()) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13});
    CHECK_THROWS(halton_point(0, 2));
}

TEST_CASE("box-muller by hand") {
    auto [a, b] = box_muller_pair(std::exp(-2.0), 0.25);
    CHECK(a == doctest::Approx(2.0));
    CHECK(b == doctest::Approx(0.0).epsilon(1e-12));
    std::tie(a, b) = box_muller_pair(1.0, 0.7);
    CHECK(a == 0.0);
    CHECK(std::abs(b) == 0.0);
    std::tie(a, b) = box_muller_pair(std::exp(-2.0), 0.5);
    CHECK(std::abs(a) < 1e-12);
    CHECK(b == doctest::Approx(-2.0));
}

TEST_CASE("star discrepancy examples") {
    CHECK(star_discrepancy_exact(PointSet(1, {0.5})) == doctest::Approx(0.5));
    CHECK(star_discrepancy_exact(PointSet(1, {0.125, 0.375, 0.625, 0.875})) == doctest::Approx(0.125));
    CHECK(star_discrepancy_exact(PointSet(1, {0.25, 0.75})) == doctest::Approx(0.25));
}

TEST_CASE("star discrepancy matches corner enumeration on small sets") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> coarse(0, 7);
    int checked = 0;
    for (std::size_t q = 1; q <= 2; ++q)
        for (std::size_t n = 1; n <= 8; ++n)
            for (int rep = 0; rep < 60; ++rep) {
                std::vector<std::vector<double>> pts(n, std::vector<double>(q));
                for (auto& p : pts)
                    for (auto& c : p) c = rep % 2 ? u(rng) : coarse(rng) / 8.0; // even reps force ties
                const double brute = brute_star_discrepancy(pts);
                CHECK(star_discrepancy_exact(to_set(pts)) == doctest::Approx(brute).epsilon(1e-14));
                CHECK(serial::star_discrepancy_exact(to_set(pts)) == doctest::Approx(brute).epsilon(1e-14));
                ++checked;
            }
    CHECK(checked == 960);
}

TEST_CASE("halton discrepancy decreases and stays below the low-discrepancy envelope") {
    for (std::size_t q = 1; q <= 2; ++q) {
        double prev = 1.0;
        for (int k = 6; k <= 12; ++k) {
            const std::size_t n = std::size_t(1) << k;
            const double d = star_discrepancy_exact(halton_points(n, q));
            CHECK(d <= prev);
            if (k % 2 == 0) CHECK(d < 10.0 * std::pow(std::log(double(n)), double(q)) / n);
            prev = d;
        }
    }
}

TEST_CASE("discrepancy parallel equals serial") {
    omp_set_num_threads(4);
    const auto pts = halton_points(700, 2);
    CHECK(star_discrepancy_exact(pts) == serial::star_discrepancy_exact(pts));
    CHECK_THROWS_AS(star_discrepancy_exact(halton_points(20000, 2)), sa::BudgetError);
}

TEST_CASE("source determinism and composition") {
    IidUniformSource a(3, 42), b(3, 42), c(3, 43);
    const auto ta = take(a, 1000);
    CHECK(ta == take(b, 1000));
    CHECK(ta != take(c, 1000));

    HaltonGaussianSource hg(2);
    const auto y = next_innovation(hg);
    const auto [z1, z2] = box_muller_pair(0.5, 1.0 / 3.0);
    CHECK(y[0] == doctest::Approx(z1).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(z2).epsilon(1e-15));

    Ar1Source ar(2, 0.0, 9);
    IidGaussianSource g(2, 9);
    CHECK(take(ar, 500) == take(g, 500));

    auto cl = a.clone();
    CHECK(take(*cl, 10) == take(a, 10));
}

TEST_CASE("ar1_next") {
    CHECK(ar1_next(1.0, 0.5, 0.0) == 0.5);
    CHECK(ar1_next(0.0, 0.9, 1.0) == 1.0);
    CHECK(ar1_next(2.0, 0.0, 0.3) == 0.3);
}

TEST_CASE("halton-gaussian moments") {
    HaltonGaussianSource s(2);
    std::vector<double> y(2);
    double m[2] = {0, 0}, m2[2] = {0, 0};
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        s.next(y);
        for (int k = 0; k < 2; ++k) {
            m[k] += y[k];
            m2[k] += y[k] * y[k];
        }
    }
    for (int k = 0; k < 2; ++k) {
        const double mean = m[k] / n;
        CHECK(std::abs(mean) < 0.02);
        CHECK(std::abs(m2[k] / n - mean * mean - 1.0) < 0.05);
    }
}

TEST_CASE("ar1 ergodic average") {
    for (std::uint64_t seed : {1, 2, 3}) {
        Ar1Source s(1, 0.5, seed);
        double sum = 0.0, y = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            s.next({&y, 1});
            sum += y;
        }
        CHECK(std::abs(sum / n) <= 5.0 / std::sqrt(double(n)));
    }
}

TEST_CASE("euler step") {
    const double kappa = 1.0, vartheta = 1.0, sigma = 1.5;
    DriftFn b = [&](std::span<const double> y, std::span<double> o) { o[0] = kappa * (vartheta - y[0]); };
    DiffusionFn s = [&](std::span<const double> y, std::span<const double> u, std::span<double> o) {
        o[0] = sigma * std::sqrt(std::abs(y[0])) * u[0];
    };
    const std::vector<double> one{1.0}, zero{0.0}, unit{1.0};
    CHECK(euler_step(one, b, s, 0.1, zero)[0] == 1.0);
    CHECK(euler_step(one, b, s, 0.1, unit)[0] == doctest::Approx(1.0 + std::sqrt(0.1) * 1.5));
    CHECK(euler_step(one, b, s, 0.1, unit)[0] == doctest::Approx(1.47434).epsilon(1e-5));

    DriftFn b0 = [](std::span<const double>, std::span<double> o) { std::fill(o.begin(), o.end(), 0.0); };
    DiffusionFn s0 = [](std::span<const double>, std::span<const double>, std::span<double> o) {
        std::fill(o.begin(), o.end(), 0.0);
    };
    const std::vector<double> y{3.0, -2.5};
    CHECK(euler_step(y, b0, s0, 0.7, std::vector<double>{1.0, 1.0}) == y);
    const std::vector<double> y1{2.0};
    CHECK(std::abs(euler_step(y1, b, s, 1e-12, zero)[0] - 2.0) < 1e-9);
    CHECK(std::abs(euler_step(y1, b, s, 1e-12, unit)[0] - 2.0) <= 1.5 * std::sqrt(2.0) * 1e-6 + 1e-9);
    CHECK_THROWS(euler_step(y1, b, s, 0.0, unit));

    DriftFn bad = [](std::span<const double>, std::span<double> o) { o[0] = NAN; };
    CHECK_THROWS_AS(euler_step(y1, bad, s, 0.1, unit, 17), sa::NumericError);
}

TEST_CASE("euler source replays") {
    DriftFn b = [](std::span<const double> y, std::span<double> o) { o[0] = -y[0]; };
    DiffusionFn s = [](std::span<const double>, std::span<const double> u, std::span<double> o) { o[0] = u[0]; };
    EulerSource e1({0.5}, b, s, DecreasingStepSchedule(1.0, 1.0 / 3.0), std::make_unique<IidGaussianSource>(1, 4));
    EulerSource e2(e1);
    double y = 0.0;
    e1.next({&y, 1});
    CHECK(y == 0.5);
    CHECK(take(e1, 100) != std::vector<double>(100, 0.5));
    e2.next({&y, 1});
    EulerSource e3({0.5}, b, s, DecreasingStepSchedule(1.0, 1.0 / 3.0), std::make_unique<IidGaussianSource>(1, 4));
    e3.next({&y, 1});
    CHECK(take(e2, 100) == take(e3, 100));
}

TEST_CASE("averaging system examples") {
    using sa::core::PowerSequence;
    auto rep = averaging_system_check(PowerSequence{1.0, 1.0 / 3.0}, PowerSequence{1.0, 0.0}, 1000000);
    CHECK(rep.verdict == AveragingVerdict::averaging);
    CHECK(rep.closed_form.value());
    CHECK(rep.conditions.size() == 5);
    CHECK(rep.numeric != AveragingVerdict::not_averaging);

    rep = averaging_system_check(PowerSequence{1.0, 0.0}, PowerSequence{1.0, 0.0}, 1000000);
    CHECK(rep.verdict == AveragingVerdict::not_averaging);

    rep = averaging_system_check(PowerSequence{1.0, 0.5}, PowerSequence{1.0, 0.0}, 1000000);
    CHECK(rep.verdict == AveragingVerdict::averaging);
}
