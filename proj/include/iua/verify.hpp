#pragma once

#include "iua/abstract.hpp"
#include "iua/expr.hpp"
#include "iua/target.hpp"

#include <optional>
#include <random>
#include <vector>

namespace iua {

/// Certified sandwich around the true range of f over a box:
/// lo_cert <= min f <= lo_emp and hi_emp <= max f <= hi_cert, with
/// gap = L * h the Lipschitz padding of the sample spacing h.
struct RangeEstimate {
    double lo_cert = 0.0;
    double hi_cert = 0.0;
    double lo_emp = 0.0;
    double hi_emp = 0.0;
    double gap = 0.0;
};

/// Samples f over box (must lie inside the domain) on an inclusive lattice
/// with per-dim spacing side/samples_per_axis.
RangeEstimate range_oracle(const TargetFunction& tf, const IntervalBox& box,
                           int samples_per_axis);

/// One checked box of a delta-interval-approximation run.
struct BoxCheck {
    IntervalBox box;
    Interval net;        // abstract output N#(B)
    double lo_cert = 0.0;
    double hi_cert = 0.0;
    bool inner_ok = true;
    bool outer_ok = true;
    bool inner_vacuous = false; // l + delta > u - delta: nothing to contain
    double inner_slack = 0.0;   // min distance to an inner-check failure
    double outer_slack = 0.0;   // min distance to an outer-check failure

    bool ok() const { return inner_ok && outer_ok; }
};

struct CheckReport {
    int boxes_checked = 0;
    std::vector<BoxCheck> rows;     // one per box, in input order
    std::vector<BoxCheck> failures; // subset with a failed containment
    double min_inner_slack = 0.0;   // tightest non-vacuous inner margin
    double max_outer_slack = 0.0;   // loosest outer margin

    bool all_ok() const { return failures.empty(); }
};

struct CheckOptions {
    double oracle_gap = 0.02; // target L*h of the per-box range oracle
    int min_samples = 8;
    int threads = 0; // <= 0: core count; box checks are independent
};

/// The two-sided containment [l+delta, u-delta] ⊆ N#(B) ⊆ [l-delta, u+delta]
/// per box, with l, u replaced by the certified sandwich. N must have a
/// single output (ShapeError otherwise); boxes must lie inside the domain.
CheckReport check_interval_approx(const ExprGraph& net, const TargetFunction& tf, double delta,
                                  const std::vector<IntervalBox>& boxes,
                                  const CheckOptions& opts = {});

/// Seeded random sub-boxes of a domain (a tenth of them degenerate, covering
/// the pointwise special case).
std::vector<IntervalBox> sample_boxes(const IntervalBox& domain, int count, unsigned seed);

enum class RobustResult { ProvenLow, ProvenHigh, Unknown };

/// Binary-classifier certification over the eps-ball of x (threshold 0.5):
/// abstracts the ball losslessly and checks which side the output box is on.
RobustResult certify_robust(const ExprGraph& net, std::span<const double> x, double eps);

struct NaryCertificate {
    bool proven = false;
    int class_index = -1; // 1-based when proven
};

/// n-ary certification: Proven(i) iff output dimension i dominates every
/// other dimension strictly across the abstract output box.
NaryCertificate certify_robust_nary(const ExprGraph& net, std::span<const double> x, double eps);

} // namespace iua
