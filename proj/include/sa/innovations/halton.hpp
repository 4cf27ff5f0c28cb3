#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sa::innovations {

/// A point of the unit cube [0,1)^q.
class UnitPoint {
public:
    explicit UnitPoint(std::vector<double> coords);

    std::size_t dimension() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

private:
    std::vector<double> coords_;
};

/// Largest Halton dimension supported (number of tabulated primes).
inline constexpr std::size_t max_halton_dimension = 256;

/// First `count` primes, count <= max_halton_dimension.
std::span<const std::uint32_t> first_primes(std::size_t count);

/// Van der Corput digit reversal of `n` in `base`, mapped into [0,1).
/// Integer digit arithmetic with a single final division.
double radical_inverse(std::uint64_t n, std::uint32_t base);

/// n-th point (n >= 1) of the plain Halton sequence in dimension q; bases are the first q primes.
UnitPoint halton_point(std::uint64_t n, std::size_t q);

/// Writes halton_point(n, out.size()) into `out` without allocating.
void halton_point_into(std::uint64_t n, std::span<double> out);

/// Box-Muller map (sqrt(-2 ln u1) sin(2 pi u2), sqrt(-2 ln u1) cos(2 pi u2)); u1 in (0,1].
std::pair<double, double> box_muller_pair(double u1, double u2);

} // namespace sa::innovations
