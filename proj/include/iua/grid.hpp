#pragma once

#include "iua/interval.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace iua {

/// A box on the epsilon-lattice: per-dimension pair of grid-line indices
/// (lo < hi), so its extent per dimension is a positive multiple of epsilon.
struct GridBox {
    std::vector<std::pair<int, int>> seg;

    int dim() const { return static_cast<int>(seg.size()); }
    friend bool operator==(const GridBox&, const GridBox&) = default;
};

/// The epsilon-grid over the extended domain C' (C grown by one cell per
/// side, lattice anchored at C's lower corner). Enumerates the set of all
/// axis-aligned boxes with lattice-vertex corners: per dimension n cells
/// give n(n+1)/2 segments, and boxes are the cartesian product of segments.
class Grid {
public:
    Grid() = default;
    /// Throws GridExplosionError when the box count exceeds max_boxes, and
    /// DomainError when epsilon is not below C's shortest side.
    Grid(const IntervalBox& domain, double epsilon, std::uint64_t max_boxes = 1000000);

    /// Rebuilds a grid from serialized parts (origin, cell counts, epsilon).
    static Grid from_parts(std::vector<double> origin, std::vector<int> cells, double epsilon);

    int dim() const { return static_cast<int>(cells_.size()); }
    double epsilon() const { return epsilon_; }
    const std::vector<int>& cells() const { return cells_; }
    int lines(int d) const { return cells_[d] + 1; }
    double line(int d, int index) const { return origin_[d] + epsilon_ * index; }
    const std::vector<double>& origin() const { return origin_; }

    std::uint64_t box_count() const { return box_count_; }
    GridBox box_from_id(std::uint64_t id) const;
    std::uint64_t id_from_box(const GridBox& g) const;

    /// Coordinates of a grid box as an interval box.
    IntervalBox coords(const GridBox& g) const;
    /// nu(G): the box inflated by epsilon on every side.
    IntervalBox neighborhood(const GridBox& g) const;

    /// Smallest grid box containing b; when b is itself a grid box, its
    /// neighborhood's grid box instead (clamped to the lattice).
    GridBox enclosing_box(const IntervalBox& b) const;

private:
    std::uint64_t segs_per_dim(int d) const;

    std::vector<double> origin_;
    std::vector<int> cells_;
    double epsilon_ = 0.0;
    std::uint64_t box_count_ = 0;
    std::vector<std::vector<std::uint64_t>> row_start_; // per dim: segment id of row i
};

} // namespace iua
