#include "sa/innovations/halton.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sa::innovations {

namespace {

std::array<std::uint32_t, max_halton_dimension> make_primes() {
    std::array<std::uint32_t, max_halton_dimension> primes{};
    std::size_t count = 0;
    for (std::uint32_t candidate = 2; count < primes.size(); ++candidate) {
        bool prime = true;
        for (std::size_t i = 0; i < count && primes[i] * primes[i] <= candidate; ++i) {
            if (candidate % primes[i] == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes[count++] = candidate;
    }
    return primes;
}

const std::array<std::uint32_t, max_halton_dimension>& prime_table() {
    static const auto table = make_primes();
    return table;
}

} // namespace

UnitPoint::UnitPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("UnitPoint: dimension must be >= 1");
    for (double c : coords_) {
        if (!(c >= 0.0 && c < 1.0))
            throw std::invalid_argument("UnitPoint: coordinate " + std::to_string(c) +
                                        " outside [0,1)");
    }
}

std::span<const std::uint32_t> first_primes(std::size_t count) {
    if (count > max_halton_dimension)
        throw std::invalid_argument("first_primes: at most " +
                                    std::to_string(max_halton_dimension) + " primes tabulated");
    return std::span<const std::uint32_t>(prime_table().data(), count);
}

double radical_inverse(std::uint64_t n, std::uint32_t base) {
    if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");
    if (n == 0) return 0.0;
    if (n > std::numeric_limits<std::uint64_t>::max() / base)
        throw std::invalid_argument("radical_inverse: index too large for exact digit arithmetic");
    std::uint64_t reversed = 0;
    std::uint64_t denominator = 1;
    while (n > 0) {
        reversed = reversed * base + n % base;
        denominator *= base;
        n /= base;
    }
    const double value = static_cast<double>(reversed) / static_cast<double>(denominator);
    // Only reachable when the conversion of huge integers rounds up.
    return value < 1.0 ? value : std::nextafter(1.0, 0.0);
}

void halton_point_into(std::uint64_t n, std::span<double> out) {
    if (out.empty()) throw std::invalid_argument("halton_point: dimension must be >= 1");
    const auto bases = first_primes(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = radical_inverse(n, bases[i]);
}

UnitPoint halton_point(std::uint64_t n, std::size_t q) {
    if (q == 0) throw std::invalid_argument("halton_point: dimension must be >= 1");
    if (n == 0) throw std::invalid_argument("halton_point: index must be >= 1");
    std::vector<double> coords(q);
    halton_point_into(n, coords);
    return UnitPoint(std::move(coords));
}

std::pair<double, double> box_muller_pair(double u1, double u2) {
    if (!(u1 > 0.0 && u1 <= 1.0))
        throw std::invalid_argument("box_muller_pair: u1 must lie in (0,1]");
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::sin(angle), radius * std::cos(angle)};
}

} // namespace sa::innovations
