#include "iua/hardness.hpp"
#include "iua/calibration.hpp"
#include "iua/errors.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

namespace iua {

namespace {

struct GadgetShape {
    double scale;
    double offset;
    double center;
    double half_width;
};

GadgetShape shape_of(GadgetKind which, int k) {
    switch (which) {
    case GadgetKind::T1: return {0.7, -0.15, 0.65, 0.05};
    case GadgetKind::T2: return {1.5 + 3.0 / (4.0 * k), -1.5, 0.05, 0.05};
    case GadgetKind::T3: return {1.0, 0.0, 0.25, 0.2};
    case GadgetKind::T4: return {0.7, -0.55, 0.35, 0.05};
    case GadgetKind::T5: return {1.0 + 3.0 / (4.0 * k), -1.0 / (2.0 * k), 0.05, 0.05};
    }
    throw Error("unknown gadget");
}

std::string budget_name(GadgetKind which) {
    switch (which) {
    case GadgetKind::T1: return "t1: 0.7*theta <= 0.05";
    case GadgetKind::T2: return "t2: (1.5 + 3/(4k))*theta <= 1/(4k)";
    case GadgetKind::T3: return "t3: theta < 1/2 - delta";
    case GadgetKind::T4: return "t4: 0.7*theta <= 0.05";
    case GadgetKind::T5: return "t5: (1 + 3/(4k))*theta <= 1/(4k)";
    }
    return "?";
}

double budget_of(GadgetKind which, int k, double delta) {
    switch (which) {
    case GadgetKind::T1:
    case GadgetKind::T4: return 0.05 / 0.7;
    case GadgetKind::T2: return (1.0 / (4.0 * k)) / (1.5 + 3.0 / (4.0 * k));
    case GadgetKind::T3: return 0.5 - delta;
    case GadgetKind::T5: return (1.0 / (4.0 * k)) / (1.0 + 3.0 / (4.0 * k));
    }
    throw Error("unknown gadget");
}

} // namespace

double GadgetSpec::value(const ActivationProfile& act, double z) const {
    return offset + scale * act.normalized(mu * (z - center));
}

void GadgetSpec::expected_bounds(double& low_lo, double& low_hi, double& high_lo,
                                 double& high_hi, double delta, int k) const {
    switch (which) {
    case GadgetKind::T1: low_lo = -0.2; low_hi = -0.1; high_lo = 0.5; high_hi = 0.6; break;
    case GadgetKind::T2:
        low_lo = -std::numeric_limits<double>::infinity();
        low_hi = -1.0;
        high_lo = 1.0 / (2.0 * k);
        high_hi = 1.0 / k;
        break;
    case GadgetKind::T3: low_lo = 0.0; low_hi = 0.5 - delta; high_lo = 0.5 + delta; high_hi = 1.0; break;
    case GadgetKind::T4: low_lo = -0.6; low_hi = -0.5; high_lo = 0.1; high_hi = 0.2; break;
    case GadgetKind::T5:
        low_lo = -1.0 / (2.0 * k);
        low_hi = -1.0 / (4.0 * k);
        high_lo = 1.0;
        high_hi = 1.0 + 1.0 / (4.0 * k);
        break;
    }
}

GadgetSpec realize_gadget(GadgetKind which, const ActivationProfile& act, int k, double delta,
                          std::optional<double> theta) {
    if (k < 1) throw DomainError("clause count must be >= 1");
    if (!(delta > 0.0 && delta < 0.5)) {
        throw GadgetBudgetError("delta must be in (0, 1/2); binding constraint " +
                                budget_name(GadgetKind::T3));
    }
    if (!act.is_squashed()) throw CalibrationRequiredError("activation not squashed");

    const GadgetShape shape = shape_of(which, k);
    const double budget = budget_of(which, k, delta);
    double th = theta.value_or(budget / 2.0);
    if (!(th > 0.0) || th > budget || (which == GadgetKind::T3 && th >= budget)) {
        throw GadgetBudgetError("theta=" + std::to_string(th) +
                                " violates binding constraint " + budget_name(which) +
                                " (budget " + std::to_string(budget) + ")");
    }
    GadgetSpec g;
    g.which = which;
    g.scale = shape.scale;
    g.offset = shape.offset;
    g.center = shape.center;
    g.half_width = shape.half_width;
    g.theta_budget = budget;
    g.theta = th;
    g.mu = find_limit_bound(act, th) / shape.half_width;
    return g;
}

std::int32_t apply_gadget(GraphBuilder& b, int act_id, const GadgetSpec& g, std::int32_t z) {
    std::int32_t shifted = b.add_sum(z, b.add_const(-g.center));
    std::int32_t step = b.add_act(act_id, b.add_scale(g.mu, shifted));
    return b.add_affine(g.scale, step, g.offset);
}

namespace {

// Common encoder: per-literal gadget, per-clause gadget over the literal sum,
// then t3 over the clause sum. Literal fragments pool across clauses.
ExprGraph encode(const CnfFormula& formula, double delta, const ActivationProfile& act,
                 GadgetKind lit_kind, GadgetKind clause_kind) {
    if (formula.clause_count() < 1) throw ParseError("formula has no clauses");
    ActivationProfile profile = act.is_squashed() ? act : make_squashable(act);
    const int k = formula.clause_count();

    // One shared theta keeps a single limit-bound search.
    const double theta =
        0.5 * std::min({budget_of(lit_kind, k, delta), budget_of(clause_kind, k, delta),
                        budget_of(GadgetKind::T3, k, delta)});
    GadgetSpec lit_gadget = realize_gadget(lit_kind, profile, k, delta, theta);
    GadgetSpec clause_gadget = realize_gadget(clause_kind, profile, k, delta, theta);
    GadgetSpec out_gadget = realize_gadget(GadgetKind::T3, profile, k, delta, theta);

    GraphBuilder b(formula.num_vars);
    const int act_id = b.add_activation(profile, true);
    std::vector<std::int32_t> clause_nodes;
    clause_nodes.reserve(formula.clauses.size());
    for (const Clause3& clause : formula.clauses) {
        std::vector<std::int32_t> lit_nodes;
        lit_nodes.reserve(3);
        for (const Literal& lit : clause.lits) {
            std::int32_t x = b.add_input(lit.var);
            std::int32_t l =
                lit.negated ? b.add_sum(b.add_const(1.0), b.add_scale(-1.0, x)) : x;
            lit_nodes.push_back(apply_gadget(b, act_id, lit_gadget, l));
        }
        std::int32_t sum = b.add_sum_of(lit_nodes);
        clause_nodes.push_back(apply_gadget(b, act_id, clause_gadget, sum));
    }
    std::int32_t y = apply_gadget(b, act_id, out_gadget, b.add_sum_of(clause_nodes));
    b.set_outputs({y});
    return b.finish();
}

} // namespace

ExprGraph encode_3cnf(const CnfFormula& formula, double delta, const ActivationProfile& act) {
    if (formula.mode != FormulaMode::Cnf) throw ShapeError("encode_3cnf needs a CNF formula");
    return encode(formula, delta, act, GadgetKind::T1, GadgetKind::T2);
}

ExprGraph encode_3dnf(const CnfFormula& formula, double delta, const ActivationProfile& act) {
    if (formula.mode != FormulaMode::Dnf) throw ShapeError("encode_3dnf needs a DNF formula");
    return encode(formula, delta, act, GadgetKind::T4, GadgetKind::T5);
}

GapResult gap_check(const ExprGraph& net, const CnfFormula& formula, double delta, int samples,
                    unsigned seed, bool force) {
    const int m = formula.num_vars;
    if (net.input_dim() != m) throw DimensionError("network/formula variable count mismatch");
    if (m > 20 && !force) {
        throw OracleInfeasibleError("2^" + std::to_string(m) +
                                    " corners; pass force to run anyway");
    }
    const bool cnf = formula.mode == FormulaMode::Cnf;

    GapResult res;
    const auto oracle_witness = brute_force_witness(formula);
    // CNF witness = satisfying corner; DNF witness = falsifying corner.
    res.oracle_positive = cnf ? oracle_witness.has_value() : !oracle_witness.has_value();

    const double hi_threshold = 0.5 + delta;
    const double lo_threshold = 0.5 - delta;
    res.extreme = cnf ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();

    std::vector<double> x(m);
    std::vector<double> mid_witness;
    auto consider = [&](const std::vector<double>& point) {
        const double y = net.eval(point)[0];
        res.extreme = cnf ? std::max(res.extreme, y) : std::min(res.extreme, y);
        // Any point on the wrong side of the gap for a negative oracle is a
        // direct witness.
        if (cnf && !res.oracle_positive && y > lo_threshold && mid_witness.empty()) {
            mid_witness = point;
        }
        if (!cnf && res.oracle_positive && y < hi_threshold && mid_witness.empty()) {
            mid_witness = point;
        }
    };

    const std::uint64_t corners = 1ull << m;
    for (std::uint64_t bits = 0; bits < corners; ++bits) {
        for (int v = 0; v < m; ++v) x[v] = ((bits >> v) & 1) ? 1.0 : 0.0;
        consider(x);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        for (int v = 0; v < m; ++v) x[v] = unit(rng);
        consider(x);
    }

    const bool side_high = cnf ? (res.extreme > hi_threshold) : (res.extreme >= hi_threshold);
    const bool side_low = cnf ? (res.extreme <= lo_threshold) : (res.extreme < lo_threshold);
    if (res.oracle_positive && side_high) {
        res.verdict = GapVerdict::GapHigh;
        res.detail = cnf ? "satisfiable; max exceeds 1/2+delta"
                         : "tautology; min stays at or above 1/2+delta";
    } else if (!res.oracle_positive && side_low) {
        res.verdict = GapVerdict::GapLow;
        res.detail = cnf ? "unsatisfiable; max stays at or below 1/2-delta"
                         : "falsifiable; min drops below 1/2-delta";
    } else {
        res.verdict = GapVerdict::Violation;
        if (!mid_witness.empty()) {
            res.witness = std::move(mid_witness);
        } else if (oracle_witness) {
            // The corner that should have pinned the network on the oracle's
            // side but did not.
            res.witness.resize(m);
            for (int v = 0; v < m; ++v) res.witness[v] = (*oracle_witness)[v] ? 1.0 : 0.0;
        }
        res.detail = "network side disagrees with the Boolean oracle";
    }
    return res;
}

} // namespace iua
