#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sa/innovations/halton.hpp"

namespace sa::innovations {

/// Row-major collection of n points in [0,1)^q.
class PointSet {
public:
    PointSet(std::size_t dimension, std::vector<double> coords);
    explicit PointSet(std::span<const UnitPoint> points);

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size() / dim_; }
    double coord(std::size_t point, std::size_t axis) const { return coords_[point * dim_ + axis]; }
    std::span<const double> point(std::size_t i) const {
        return std::span<const double>(coords_).subspan(i * dim_, dim_);
    }

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// First n Halton points (indices 1..n) in dimension q.
PointSet halton_points(std::size_t n, std::size_t q);

/// Operation budget for exact star discrepancy: n^q * q must not exceed this.
inline constexpr double exact_discrepancy_budget = 1e8;

/// Exact star discrepancy: sup over anchored boxes [0,x] of |empirical mass - volume|.
/// Evaluated on the critical grid (coordinate values and 1 per axis), each corner with the
/// closed and the open box. OpenMP-parallel over grid corners; the result does not depend
/// on the thread count. Throws BudgetError when n^q * q exceeds the budget.
double star_discrepancy_exact(const PointSet& points);

namespace serial {
/// Single-threaded reference of the same sweep.
double star_discrepancy_exact(const PointSet& points);
} // namespace serial

} // namespace sa::innovations
