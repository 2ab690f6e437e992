#pragma once

#include "iua/abstract.hpp"
#include "iua/calibration.hpp"
#include "iua/expr.hpp"
#include "iua/grid.hpp"
#include "iua/target.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iua {

/// Serializable description of a target function (enough to rebuild its
/// oracle when a blueprint is loaded back).
struct TargetSpec {
    std::string kind;   // "sin2x" | "quadratic2d" | "constant" | "csv"
    double value = 0.0; // constant targets
    std::string csv_text;
    double lipschitz = 0.0;
    IntervalBox domain;

    static TargetSpec describe(const TargetFunction& tf);
    TargetFunction instantiate() const;
};

/// Everything the construction fixed: slicing, grid, box sets and the built
/// network. `slice_boxes[i]` holds the grid-box ids of G_i.
struct IuaBlueprint {
    double delta = 0.0;
    double tau = 0.0;   // delta / 3
    double shift = 0.0; // certified min of f over C; added back as a constant
    double u_max = 0.0; // certified range top of the shifted function
    int kay = 0;        // K = floor(u_max / tau)
    bool degenerate = false;
    std::optional<Calibration> cal;
    std::optional<Grid> grid;
    std::uint64_t g_count = 0;
    std::vector<std::vector<std::uint64_t>> slice_boxes;
    ExprGraph network;
    std::string act_name;
    TargetSpec fn;
    double range_gap = 0.0; // L*h of the shift / u_max estimate

    /// Parameter-ledger consistency: tau = delta/3, mu = 2D/eps, theta within
    /// all three budgets, (K+1)*theta <= 1, and G_{i+1} ⊆ G_i.
    void assert_valid() const;
};

/// Slice i of a (shifted) function value: 0 below i*tau, value - i*tau in
/// the band, tau above (i+1)*tau.
double slice_of_value(double shifted_value, int i, double tau);

/// Slice value at a point; x must lie in the domain.
double slice_value(const TargetFunction& tf, int i, std::span<const double> x, double tau,
                   double shift = 0.0);

/// eps = min(0.49, tau / (2L)); constant targets get the 0.49 cap. L = 0 with
/// non-constant samples raises InconsistentLipschitzError.
double choose_epsilon(const TargetFunction& tf, double tau);

/// Grid over the domain extended one cell per side (wrapper over Grid).
Grid build_grid(const IntervalBox& domain, double epsilon, std::uint64_t max_boxes = 1000000);

/// Sound lower bound on min f over (box ∩ C): sampled minimum minus L*h,
/// h = side/samples_per_axis. Empty intersection yields +infinity.
double certified_box_min(const TargetFunction& tf, const IntervalBox& box, int samples_per_axis);

/// Certified minima of f over every grid box, from one shared fine lattice
/// (subdiv samples per epsilon cell per axis, h = epsilon/subdiv). Also
/// tracks the global sampled extrema over C.
class GridMinCache {
public:
    GridMinCache(const TargetFunction& tf, const Grid& grid, int subdiv = 8);

    double box_min(const GridBox& g) const;     // certified: sampled min - L*h
    double box_min(std::uint64_t box_id) const;
    /// Certified minimum for every grid box, indexed by box id.
    std::vector<double> all_box_mins() const;
    double global_min_sampled() const { return global_min_; }
    double global_max_sampled() const { return global_max_; }
    double gap() const { return gap_; } // L*h

private:
    const Grid* grid_;
    double gap_;
    double global_min_;
    double global_max_;
    std::vector<int> cell_counts_;
    std::vector<double> cell_min_; // flat [cell multi-index]
};

/// G_i = boxes whose certified minimum of the shifted function exceeds
/// (i+1)*tau; `mins` is indexed by box id (all_box_mins). Ids ascend, so
/// nesting G_{i+1} ⊆ G_i is structural.
std::vector<std::uint64_t> select_slice_boxes(const std::vector<double>& mins, double shift,
                                              double tau, int i);

struct BuildOptions {
    int subdiv = 8;                   // samples per epsilon cell per axis
    std::uint64_t max_boxes = 1000000; // |G| cap (CLI overrides via IUA_MAX_BOXES)
    unsigned seed = 1;                // target validation sampling
};

/// Runs the whole construction for one target / tolerance / activation.
IuaBlueprint build_iua(const TargetFunction& tf, double delta, const ActivationProfile& act,
                       const BuildOptions& opts = {});

} // namespace iua
