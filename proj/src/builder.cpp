#include "iua/builder.hpp"
#include "iua/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace iua {

TargetSpec TargetSpec::describe(const TargetFunction& tf) {
    TargetSpec s;
    s.kind = tf.name;
    s.lipschitz = tf.lipschitz;
    s.domain = tf.domain;
    return s;
}

TargetFunction TargetSpec::instantiate() const {
    if (kind == "constant") return target_constant(value, domain);
    if (kind == "csv" || !csv_text.empty()) {
        return target_from_csv(csv_text, lipschitz, kind);
    }
    TargetFunction tf = target_by_name(kind);
    tf.lipschitz = lipschitz;
    return tf;
}

void IuaBlueprint::assert_valid() const {
    if (tau != delta / 3.0) throw Error("blueprint: tau != delta/3");
    if (degenerate) {
        if (kay != 0 || g_count != 0) throw Error("blueprint: bad degenerate fields");
        return;
    }
    if (!cal || !grid) throw Error("blueprint: missing calibration or grid");
    cal->validate();
    const int m = fn.domain.dim();
    const double theta = cal->theta;
    if (theta > 1.0 / (kay + 1.0) || theta > 1.0 / (4.0 * m + 2.0) ||
        theta > 1.0 / (4.0 * static_cast<double>(g_count))) {
        throw ThetaBudgetError("blueprint: theta exceeds an appendix budget");
    }
    if ((kay + 1.0) * theta > 1.0) throw Error("blueprint: (K+1)*theta > 1");
    if (slice_boxes.size() != static_cast<std::size_t>(kay) + 1) {
        throw Error("blueprint: slice set count != K+1");
    }
    for (std::size_t i = 0; i + 1 < slice_boxes.size(); ++i) {
        if (!std::includes(slice_boxes[i].begin(), slice_boxes[i].end(),
                           slice_boxes[i + 1].begin(), slice_boxes[i + 1].end())) {
            throw Error("blueprint: G_{i+1} not nested in G_i");
        }
    }
}

double slice_of_value(double shifted_value, int i, double tau) {
    const double lo = i * tau;
    if (shifted_value <= lo) return 0.0;
    if (shifted_value > lo + tau) return tau;
    return shifted_value - lo;
}

double slice_value(const TargetFunction& tf, int i, std::span<const double> x, double tau,
                   double shift) {
    if (i < 0) throw DomainError("slice index must be non-negative");
    if (!tf.domain.contains_point(x, 1e-12)) {
        throw DomainError("slice_value: point outside the target domain");
    }
    return slice_of_value(tf.oracle(x) - shift, i, tau);
}

double choose_epsilon(const TargetFunction& tf, double tau) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    if (tf.lipschitz == 0.0) {
        // Constant targets have a vacuous continuity modulus; verify.
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x(tf.dim());
        double first = 0.0;
        for (int s = 0; s < 100; ++s) {
            for (int d = 0; d < tf.dim(); ++d) {
                x[d] = tf.domain.dims[d].lo + unit(rng) * tf.domain.dims[d].width();
            }
            double v = tf.oracle(x);
            if (s == 0) {
                first = v;
            } else if (std::fabs(v - first) > 1e-12) {
                throw InconsistentLipschitzError(
                    "L = 0 declared but target is not constant on samples");
            }
        }
        return 0.49;
    }
    return std::min(0.49, tau / (2.0 * tf.lipschitz));
}

Grid build_grid(const IntervalBox& domain, double epsilon, std::uint64_t max_boxes) {
    return Grid(domain, epsilon, max_boxes);
}

namespace {

// Sampled min of f over the clamp of a coordinate lattice into C. Clamping
// projects extension-cell samples onto the domain face, which is exactly the
// G ∩ C restriction.
double lattice_min(const TargetFunction& tf, const IntervalBox& box,
                   const std::vector<int>& counts) {
    const int m = box.dim();
    std::vector<int> idx(m, 0);
    std::vector<double> x(m);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        for (int d = 0; d < m; ++d) {
            const Interval& iv = box.dims[d];
            double t = counts[d] == 0 ? 0.0 : static_cast<double>(idx[d]) / counts[d];
            double coord = iv.lo + t * iv.width();
            x[d] = std::clamp(coord, tf.domain.dims[d].lo, tf.domain.dims[d].hi);
        }
        best = std::min(best, tf.oracle(x));
        int d = 0;
        while (d < m && ++idx[d] > counts[d]) {
            idx[d] = 0;
            ++d;
        }
        if (d == m) break;
    }
    return best;
}

} // namespace

double certified_box_min(const TargetFunction& tf, const IntervalBox& box,
                         int samples_per_axis) {
    if (box.dim() != tf.dim()) throw DimensionError("certified_box_min: dimension mismatch");
    if (samples_per_axis < 1) throw DomainError("samples_per_axis must be >= 1");

    // Empty intersection: vacuous membership.
    for (int d = 0; d < box.dim(); ++d) {
        if (box.dims[d].hi < tf.domain.dims[d].lo || box.dims[d].lo > tf.domain.dims[d].hi) {
            return std::numeric_limits<double>::infinity();
        }
    }
    double h = 0.0;
    std::vector<int> counts(box.dim(), samples_per_axis);
    for (int d = 0; d < box.dim(); ++d) {
        h = std::max(h, box.dims[d].width() / samples_per_axis);
        if (box.dims[d].width() == 0.0) counts[d] = 0;
    }
    return lattice_min(tf, box, counts) - tf.lipschitz * h;
}

GridMinCache::GridMinCache(const TargetFunction& tf, const Grid& grid, int subdiv)
    : grid_(&grid) {
    if (subdiv < 1) throw DomainError("subdiv must be >= 1");
    const int m = grid.dim();
    const double h = grid.epsilon() / subdiv;
    gap_ = tf.lipschitz * h;

    // Fine lattice of f values, clamped into the domain.
    std::vector<int> fine_counts(m);
    std::size_t total = 1;
    for (int d = 0; d < m; ++d) {
        fine_counts[d] = grid.cells()[d] * subdiv + 1;
        total *= static_cast<std::size_t>(fine_counts[d]);
    }
    std::vector<double> fine(total);
    global_min_ = std::numeric_limits<double>::infinity();
    global_max_ = -std::numeric_limits<double>::infinity();
    {
        std::vector<int> idx(m, 0);
        std::vector<double> x(m);
        for (std::size_t flat = 0; flat < total; ++flat) {
            for (int d = 0; d < m; ++d) {
                double coord = grid.origin()[d] + h * idx[d];
                x[d] = std::clamp(coord, tf.domain.dims[d].lo, tf.domain.dims[d].hi);
            }
            const double v = tf.oracle(x);
            fine[flat] = v;
            global_min_ = std::min(global_min_, v);
            global_max_ = std::max(global_max_, v);
            int d = 0;
            while (d < m && ++idx[d] == fine_counts[d]) {
                idx[d] = 0;
                ++d;
            }
        }
    }

    // Per-cell minimum over the (subdiv+1)^m fine points of each cell.
    cell_counts_ = grid.cells();
    std::size_t cell_total = 1;
    for (int d = 0; d < m; ++d) cell_total *= static_cast<std::size_t>(cell_counts_[d]);
    cell_min_.assign(cell_total, std::numeric_limits<double>::infinity());

    std::vector<std::size_t> fine_stride(m, 1), cell_stride(m, 1);
    for (int d = 1; d < m; ++d) {
        fine_stride[d] = fine_stride[d - 1] * static_cast<std::size_t>(fine_counts[d - 1]);
        cell_stride[d] = cell_stride[d - 1] * static_cast<std::size_t>(cell_counts_[d - 1]);
    }
    std::vector<int> cell(m, 0);
    for (std::size_t cflat = 0; cflat < cell_total; ++cflat) {
        std::vector<int> off(m, 0);
        double best = std::numeric_limits<double>::infinity();
        while (true) {
            std::size_t f = 0;
            for (int d = 0; d < m; ++d) {
                f += fine_stride[d] * static_cast<std::size_t>(cell[d] * subdiv + off[d]);
            }
            best = std::min(best, fine[f]);
            int d = 0;
            while (d < m && ++off[d] > subdiv) {
                off[d] = 0;
                ++d;
            }
            if (d == m) break;
        }
        cell_min_[cflat] = best;
        int d = 0;
        while (d < m && ++cell[d] == cell_counts_[d]) {
            cell[d] = 0;
            ++d;
        }
    }
}

double GridMinCache::box_min(const GridBox& g) const {
    const int m = static_cast<int>(cell_counts_.size());
    if (g.dim() != m) throw DimensionError("box_min: dimension mismatch");
    std::vector<std::size_t> stride(m, 1);
    for (int d = 1; d < m; ++d) {
        stride[d] = stride[d - 1] * static_cast<std::size_t>(cell_counts_[d - 1]);
    }
    std::vector<int> idx(m);
    for (int d = 0; d < m; ++d) idx[d] = g.seg[d].first;
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::size_t flat = 0;
        for (int d = 0; d < m; ++d) flat += stride[d] * static_cast<std::size_t>(idx[d]);
        best = std::min(best, cell_min_[flat]);
        int d = 0;
        while (d < m) {
            if (++idx[d] < g.seg[d].second) break;
            idx[d] = g.seg[d].first;
            ++d;
        }
        if (d == m) break;
    }
    return best - gap_;
}

double GridMinCache::box_min(std::uint64_t box_id) const {
    return box_min(grid_->box_from_id(box_id));
}

std::vector<double> GridMinCache::all_box_mins() const {
    std::vector<double> out(grid_->box_count());
    for (std::uint64_t id = 0; id < out.size(); ++id) {
        out[id] = box_min(grid_->box_from_id(id));
    }
    return out;
}

std::vector<std::uint64_t> select_slice_boxes(const std::vector<double>& mins, double shift,
                                              double tau, int i) {
    std::vector<std::uint64_t> out;
    const double threshold = (i + 1.0) * tau;
    for (std::uint64_t id = 0; id < mins.size(); ++id) {
        if (mins[id] - shift > threshold) out.push_back(id);
    }
    return out;
}

IuaBlueprint build_iua(const TargetFunction& tf, double delta, const ActivationProfile& act,
                       const BuildOptions& opts) {
    if (!(delta > 0.0)) throw DomainError("delta must be positive");
    tf.validate(opts.seed);
    ActivationProfile profile = act.is_squashed() ? act : make_squashable(act);

    IuaBlueprint bp;
    bp.delta = delta;
    bp.tau = delta / 3.0;
    bp.act_name = profile.name;
    bp.fn = TargetSpec::describe(tf);

    const int m = tf.dim();

    // Degenerate range: constant targets reduce to a single constant node.
    if (tf.lipschitz == 0.0) {
        choose_epsilon(tf, bp.tau); // validates constancy
        std::vector<double> probe(m);
        for (int d = 0; d < m; ++d) probe[d] = tf.domain.dims[d].lo;
        bp.shift = tf.oracle(probe);
        bp.u_max = 0.0;
        bp.kay = 0;
        bp.degenerate = true;
        bp.slice_boxes.assign(1, {});
        GraphBuilder b(m);
        b.set_outputs({b.add_const(bp.shift)});
        bp.network = b.finish();
        bp.assert_valid();
        return bp;
    }

    double epsilon = choose_epsilon(tf, bp.tau);
    double shortest = tf.domain.dims[0].width();
    for (const Interval& iv : tf.domain.dims) shortest = std::min(shortest, iv.width());
    if (!(shortest > 0.0)) throw DomainError("domain has a zero-width side");
    while (!(epsilon < shortest)) epsilon /= 2.0; // free to pick any smaller epsilon

    bp.grid = build_grid(tf.domain, epsilon, opts.max_boxes);
    GridMinCache cache(tf, *bp.grid, opts.subdiv);

    bp.range_gap = cache.gap();
    bp.shift = cache.global_min_sampled() - cache.gap();
    bp.u_max = (cache.global_max_sampled() + cache.gap()) - bp.shift;
    bp.kay = static_cast<int>(std::floor(bp.u_max / bp.tau));
    bp.g_count = bp.grid->box_count();

    const double theta = std::min({1.0 / (bp.kay + 1.0), 1.0 / (4.0 * m + 2.0),
                                   1.0 / (4.0 * static_cast<double>(bp.g_count))});
    const double dee = find_limit_bound(profile, theta);
    bp.cal = Calibration::make(theta, dee, epsilon);

    const std::vector<double> mins = cache.all_box_mins();
    bp.slice_boxes.reserve(bp.kay + 1);
    for (int i = 0; i <= bp.kay; ++i) {
        bp.slice_boxes.push_back(select_slice_boxes(mins, bp.shift, bp.tau, i));
    }

    // Assemble N = shift + tau * sum_i N_i, sharing box indicators across
    // slices through the builder's node pool.
    GraphBuilder b(m);
    const int act_id = b.add_activation(profile, true);
    std::unordered_map<std::uint64_t, std::int32_t> box_nodes;
    std::vector<std::int32_t> slices;
    slices.reserve(bp.kay + 1);
    for (int i = 0; i <= bp.kay; ++i) {
        std::vector<std::int32_t> members;
        members.reserve(bp.slice_boxes[i].size());
        for (std::uint64_t id : bp.slice_boxes[i]) {
            auto it = box_nodes.find(id);
            if (it == box_nodes.end()) {
                const GridBox g = bp.grid->box_from_id(id);
                std::vector<std::pair<double, double>> ranges(m);
                for (int d = 0; d < m; ++d) {
                    ranges[d] = {bp.grid->line(d, g.seg[d].first),
                                 bp.grid->line(d, g.seg[d].second)};
                }
                it = box_nodes.emplace(id,
                                       build_box_indicator(b, act_id, *bp.cal, ranges).output)
                         .first;
            }
            members.push_back(it->second);
        }
        std::int32_t inner = b.add_sum(b.add_sum_of(members), b.add_const(-0.5));
        slices.push_back(b.add_act(act_id, b.add_scale(bp.cal->mu, inner)));
    }
    std::int32_t total = b.add_affine(bp.tau, b.add_sum_of(slices), bp.shift);
    b.set_outputs({total});
    bp.network = b.finish();
    bp.assert_valid();
    return bp;
}

} // namespace iua
