#include "sa/innovations/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sa/errors.hpp"

namespace sa::innovations {

PointSet::PointSet(std::size_t dimension, std::vector<double> coords)
    : dim_(dimension), coords_(std::move(coords)) {
    if (dim_ == 0) throw std::invalid_argument("PointSet: dimension must be >= 1");
    if (coords_.size() % dim_ != 0)
        throw std::invalid_argument("PointSet: coordinate count is not a multiple of dimension");
    for (double c : coords_)
        if (!(c >= 0.0 && c < 1.0))
            throw std::invalid_argument("PointSet: coordinate " + std::to_string(c) +
                                        " outside [0,1)");
}

PointSet::PointSet(std::span<const UnitPoint> points) : dim_(0) {
    if (points.empty()) throw std::invalid_argument("PointSet: empty point list");
    dim_ = points.front().dimension();
    coords_.reserve(points.size() * dim_);
    for (const auto& p : points) {
        if (p.dimension() != dim_) throw std::invalid_argument("PointSet: mixed dimensions");
        coords_.insert(coords_.end(), p.coords().begin(), p.coords().end());
    }
}

PointSet halton_points(std::size_t n, std::size_t q) {
    std::vector<double> coords(n * q);
    for (std::size_t i = 0; i < n; ++i)
        halton_point_into(i + 1, std::span<double>(coords).subspan(i * q, q));
    return PointSet(q, std::move(coords));
}

namespace {

// Precomputed grids and ordering shared by the serial and parallel sweeps.
struct Sweep {
    const PointSet& pts;
    std::size_t n;
    std::size_t q;
    std::vector<std::vector<double>> grid; // per axis: sorted unique coords plus 1.0
    std::vector<std::size_t> by_last;      // point indices sorted by last coordinate
    std::size_t combos = 1;                // corners over the first q-1 axes

    explicit Sweep(const PointSet& points) : pts(points), n(points.size()), q(points.dimension()) {
        if (n == 0) throw std::invalid_argument("star_discrepancy_exact: empty point set");
        const double ops = std::pow(static_cast<double>(n), static_cast<double>(q)) * q;
        if (ops > exact_discrepancy_budget)
            throw BudgetError("star_discrepancy_exact: point set too large for exact mode (n^q*q = " +
                              std::to_string(ops) + " > 1e8)");
        grid.resize(q);
        for (std::size_t j = 0; j < q; ++j) {
            auto& g = grid[j];
            g.reserve(n + 1);
            for (std::size_t i = 0; i < n; ++i) g.push_back(pts.coord(i, j));
            g.push_back(1.0);
            std::sort(g.begin(), g.end());
            g.erase(std::unique(g.begin(), g.end()), g.end());
        }
        by_last.resize(n);
        std::iota(by_last.begin(), by_last.end(), std::size_t{0});
        std::stable_sort(by_last.begin(), by_last.end(), [&](std::size_t a, std::size_t b) {
            return pts.coord(a, q - 1) < pts.coord(b, q - 1);
        });
        for (std::size_t j = 0; j + 1 < q; ++j) combos *= grid[j].size();
    }

    // Max local discrepancy over all corners whose first q-1 coordinates are given by
    // the mixed-radix index `combo`. `closed`/`open` are scratch buffers of size n.
    double corner_column(std::size_t combo, std::vector<char>& closed, std::vector<char>& open) const {
        double volume = 1.0;
        std::fill(closed.begin(), closed.end(), char{1});
        std::fill(open.begin(), open.end(), char{1});
        for (std::size_t j = 0; j + 1 < q; ++j) {
            const auto& g = grid[j];
            const double x = g[combo % g.size()];
            combo /= g.size();
            volume *= x;
            for (std::size_t i = 0; i < n; ++i) {
                const double c = pts.coord(i, j);
                if (c > x) closed[i] = 0;
                if (c >= x) open[i] = 0;
            }
        }

        const auto& last = grid[q - 1];
        double worst = 0.0;
        std::size_t closed_count = 0;
        std::size_t open_count = 0;
        std::size_t pc = 0; // cursor for y <= t
        std::size_t po = 0; // cursor for y < t
        const double inv_n = 1.0 / static_cast<double>(n);
        for (double t : last) {
            while (pc < n && pts.coord(by_last[pc], q - 1) <= t) {
                closed_count += closed[by_last[pc]] ? 1 : 0;
                ++pc;
            }
            while (po < n && pts.coord(by_last[po], q - 1) < t) {
                open_count += open[by_last[po]] ? 1 : 0;
                ++po;
            }
            const double vol = volume * t;
            worst = std::max(worst, static_cast<double>(closed_count) * inv_n - vol);
            worst = std::max(worst, vol - static_cast<double>(open_count) * inv_n);
        }
        return worst;
    }
};

} // namespace

double star_discrepancy_exact(const PointSet& points) {
    const Sweep sweep(points);
    const auto combos = static_cast<std::ptrdiff_t>(sweep.combos);
    double worst = 0.0;
#pragma omp parallel reduction(max : worst)
    {
        std::vector<char> closed(sweep.n);
        std::vector<char> open(sweep.n);
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t c = 0; c < combos; ++c)
            worst = std::max(worst, sweep.corner_column(static_cast<std::size_t>(c), closed, open));
    }
    return worst;
}

namespace serial {

double star_discrepancy_exact(const PointSet& points) {
    const Sweep sweep(points);
    std::vector<char> closed(sweep.n);
    std::vector<char> open(sweep.n);
    double worst = 0.0;
    for (std::size_t c = 0; c < sweep.combos; ++c)
        worst = std::max(worst, sweep.corner_column(c, closed, open));
    return worst;
}

} // namespace serial

} // namespace sa::innovations
