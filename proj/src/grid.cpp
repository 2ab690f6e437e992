#include "iua/grid.hpp"
#include "iua/errors.hpp"

#include <algorithm>
#include <cmath>

namespace iua {

Grid::Grid(const IntervalBox& domain, double epsilon, std::uint64_t max_boxes)
    : epsilon_(epsilon) {
    if (domain.dim() == 0) throw DimensionError("grid over empty domain");
    if (!(epsilon > 0.0)) throw DomainError("grid epsilon must be positive");
    origin_.resize(domain.dims.size());
    cells_.resize(domain.dims.size());
    box_count_ = 1;
    for (int d = 0; d < domain.dim(); ++d) {
        const double side = domain.dims[d].width();
        if (!(epsilon < side)) {
            throw DomainError("grid epsilon " + std::to_string(epsilon) +
                              " not below shortest domain side " + std::to_string(side));
        }
        // Cells covering C (the last line may overshoot hi), plus one
        // extension cell per side.
        int inside = static_cast<int>(std::ceil(side / epsilon - 1e-9));
        cells_[d] = inside + 2;
        origin_[d] = domain.dims[d].lo - epsilon;

        const auto n = static_cast<std::uint64_t>(cells_[d]);
        const std::uint64_t segs = n * (n + 1) / 2;
        if (segs != 0 && box_count_ > max_boxes / segs + 1) {
            throw GridExplosionError("grid would enumerate more than " +
                                     std::to_string(max_boxes) +
                                     " boxes; use a larger epsilon or delta");
        }
        box_count_ *= segs;
    }
    if (box_count_ > max_boxes) {
        throw GridExplosionError("grid enumerates " + std::to_string(box_count_) +
                                 " boxes, above the cap " + std::to_string(max_boxes) +
                                 "; use a larger epsilon or delta");
    }
    row_start_.resize(cells_.size());
    for (int d = 0; d < dim(); ++d) {
        const int n = cells_[d];
        row_start_[d].resize(n + 1);
        std::uint64_t acc = 0;
        for (int i = 0; i < n; ++i) {
            row_start_[d][i] = acc;
            acc += static_cast<std::uint64_t>(n - i);
        }
        row_start_[d][n] = acc;
    }
}

Grid Grid::from_parts(std::vector<double> origin, std::vector<int> cells, double epsilon) {
    if (origin.size() != cells.size() || origin.empty()) {
        throw DimensionError("grid parts: origin/cells mismatch");
    }
    if (!(epsilon > 0.0)) throw DomainError("grid epsilon must be positive");
    Grid g;
    g.origin_ = std::move(origin);
    g.cells_ = std::move(cells);
    g.epsilon_ = epsilon;
    g.box_count_ = 1;
    g.row_start_.resize(g.cells_.size());
    for (std::size_t d = 0; d < g.cells_.size(); ++d) {
        const int n = g.cells_[d];
        if (n < 1) throw DomainError("grid parts: cell count must be positive");
        g.box_count_ *= static_cast<std::uint64_t>(n) * (n + 1) / 2;
        g.row_start_[d].resize(n + 1);
        std::uint64_t acc = 0;
        for (int i = 0; i < n; ++i) {
            g.row_start_[d][i] = acc;
            acc += static_cast<std::uint64_t>(n - i);
        }
        g.row_start_[d][n] = acc;
    }
    return g;
}

std::uint64_t Grid::segs_per_dim(int d) const {
    const auto n = static_cast<std::uint64_t>(cells_[d]);
    return n * (n + 1) / 2;
}

GridBox Grid::box_from_id(std::uint64_t id) const {
    if (id >= box_count_) throw Error("grid box id out of range");
    GridBox g;
    g.seg.resize(cells_.size());
    for (int d = dim() - 1; d >= 0; --d) {
        const std::uint64_t segs = segs_per_dim(d);
        const std::uint64_t s = id % segs;
        id /= segs;
        const auto& rows = row_start_[d];
        auto it = std::upper_bound(rows.begin(), rows.end(), s);
        const int i = static_cast<int>(it - rows.begin()) - 1;
        const int j = i + 1 + static_cast<int>(s - rows[i]);
        g.seg[d] = {i, j};
    }
    return g;
}

std::uint64_t Grid::id_from_box(const GridBox& g) const {
    if (g.dim() != dim()) throw DimensionError("grid box dimension mismatch");
    std::uint64_t id = 0;
    for (int d = 0; d < dim(); ++d) {
        const auto [i, j] = g.seg[d];
        if (i < 0 || j <= i || j > cells_[d]) throw Error("grid box segment out of range");
        const std::uint64_t s = row_start_[d][i] + static_cast<std::uint64_t>(j - i - 1);
        id = id * segs_per_dim(d) + s;
    }
    return id;
}

IntervalBox Grid::coords(const GridBox& g) const {
    if (g.dim() != dim()) throw DimensionError("grid box dimension mismatch");
    std::vector<Interval> dims;
    dims.reserve(g.seg.size());
    for (int d = 0; d < dim(); ++d) {
        dims.emplace_back(line(d, g.seg[d].first), line(d, g.seg[d].second));
    }
    return IntervalBox(std::move(dims));
}

IntervalBox Grid::neighborhood(const GridBox& g) const {
    IntervalBox box = coords(g);
    for (auto& iv : box.dims) {
        iv.lo -= epsilon_;
        iv.hi += epsilon_;
    }
    return box;
}

GridBox Grid::enclosing_box(const IntervalBox& b) const {
    if (b.dim() != dim()) throw DimensionError("box dimension mismatch");
    GridBox g;
    g.seg.resize(cells_.size());
    bool on_lattice = true;
    for (int d = 0; d < dim(); ++d) {
        const double rel_lo = (b.dims[d].lo - origin_[d]) / epsilon_;
        const double rel_hi = (b.dims[d].hi - origin_[d]) / epsilon_;
        int i = std::clamp(static_cast<int>(std::floor(rel_lo + 1e-9)), 0, cells_[d] - 1);
        int j = std::clamp(static_cast<int>(std::ceil(rel_hi - 1e-9)), i + 1, cells_[d]);
        const bool aligned = std::fabs(rel_lo - std::round(rel_lo)) < 1e-9 &&
                             std::fabs(rel_hi - std::round(rel_hi)) < 1e-9;
        on_lattice = on_lattice && aligned;
        g.seg[d] = {i, j};
    }
    if (on_lattice) {
        for (int d = 0; d < dim(); ++d) {
            auto& [i, j] = g.seg[d];
            i = std::max(0, i - 1);
            j = std::min(cells_[d], j + 1);
        }
    }
    return g;
}

} // namespace iua
