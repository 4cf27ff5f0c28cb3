#include "sa/apps/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sa::apps {

namespace {
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                 771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                 -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
} // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw std::domain_error("gamma_fn: argument not finite");
    if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("gamma_fn: pole at non-positive integer");
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    x -= 1.0;
    double a = lanczos_c[0];
    const double t = x + lanczos_g + 0.5;
    for (int i = 1; i < 9; ++i) a += lanczos_c[i] / (x + i);
    const double half = std::pow(t, 0.5 * (x + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * a;
}

} // namespace sa::apps
