#pragma once

#include "iua/activation.hpp"
#include "iua/cnf.hpp"
#include "iua/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace iua {

enum class GadgetKind { T1, T2, T3, T4, T5 };

/// One reduction gadget: an affine-scaled step approximator
///   t(z) = offset + scale * s(mu * (z - center))
/// with s the normalized activation. The defining output bounds hold in the
/// low region (z <= center - half_width) and high region
/// (z >= center + half_width) whenever theta stays within `theta_budget`.
struct GadgetSpec {
    GadgetKind which;
    double scale = 1.0;
    double offset = 0.0;
    double center = 0.0;
    double half_width = 0.0;
    double theta_budget = 0.0;
    double theta = 0.0; // the theta actually used
    double mu = 0.0;    // D / half_width

    /// Concrete value of the realized gadget (for envelope sampling).
    double value(const ActivationProfile& act, double z) const;
    /// Defining output bounds: [lo, hi] of the low and high regions.
    void expected_bounds(double& low_lo, double& low_hi, double& high_lo,
                         double& high_hi, double delta, int k) const;
};

/// Realizes a gadget for clause count k and gap delta. theta defaults to
/// half the budget; an explicit theta outside the budget raises
/// GadgetBudgetError naming the binding constraint.
GadgetSpec realize_gadget(GadgetKind which, const ActivationProfile& act, int k, double delta,
                          std::optional<double> theta = std::nullopt);

/// Applies a realized gadget to a node.
std::int32_t apply_gadget(GraphBuilder& b, int act_id, const GadgetSpec& g, std::int32_t z);

/// 3CNF encoding: literals l = x or 1-x, clauses c_j = t2(sum of t1(l)),
/// output y = t3(sum of c_j). Satisfiable formulas attain y > 1/2 + delta;
/// unsatisfiable ones stay below 1/2 - delta everywhere on [0,1]^m.
ExprGraph encode_3cnf(const CnfFormula& formula, double delta, const ActivationProfile& act);

/// 3DNF dual with t4/t5: tautologies keep y >= 1/2 + delta everywhere,
/// non-tautologies dip below 1/2 - delta.
ExprGraph encode_3dnf(const CnfFormula& formula, double delta, const ActivationProfile& act);

enum class GapVerdict { GapHigh, GapLow, Violation };

struct GapResult {
    GapVerdict verdict = GapVerdict::Violation;
    bool oracle_positive = false; // CNF: satisfiable; DNF: tautology
    double extreme = 0.0;         // max over samples (CNF) or min (DNF)
    std::vector<double> witness;  // point exhibiting a violation, when any
    std::string detail;
};

/// Evaluates the network on all 2^m Boolean corners plus `samples` uniform
/// interior points, classifies the extreme value against 1/2 +- delta, and
/// cross-checks the side against the brute-force Boolean oracle. m > 20
/// needs `force` (OracleInfeasibleError otherwise).
GapResult gap_check(const ExprGraph& net, const CnfFormula& formula, double delta,
                    int samples, unsigned seed = 1, bool force = false);

} // namespace iua
