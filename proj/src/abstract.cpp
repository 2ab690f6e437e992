#include "iua/abstract.hpp"
#include "iua/errors.hpp"

#include <algorithm>
#include <cmath>

namespace iua {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

bool exact_scale_coeff(double c) {
    if (c == 0.0 || c == 1.0 || c == -1.0) return true;
    int exp = 0;
    double mant = std::frexp(std::fabs(c), &exp);
    return mant == 0.5; // power of two: product is IEEE-exact (no overflow at our scales)
}

Interval add(const Interval& x, const Interval& y) {
    double lo = x.lo + y.lo;
    double hi = x.hi + y.hi;
    if (std::isnan(lo)) lo = -kInf; // inf + -inf sentinel collision
    if (std::isnan(hi)) hi = kInf;
    return {round_down(lo), round_up(hi)};
}

Interval scale(double c, const Interval& x) {
    if (c == 0.0) return Interval::point(0.0);
    double a = c * x.lo;
    double b = c * x.hi;
    double lo = std::min(a, b);
    double hi = std::max(a, b);
    if (exact_scale_coeff(c)) return {lo, hi};
    return {round_down(lo), round_up(hi)};
}

Interval apply_activation(const GraphActivation& act, const Interval& x) {
    if (!act.monotone) {
        throw TransformerUnavailableError("activation '" + act.profile +
                                          "' is not monotone; no interval transformer");
    }
    double lo = round_down(act.fn(x.lo), 2);
    double hi = round_up(act.fn(x.hi), 2);
    lo = std::max(lo, act.out_lo);
    hi = std::min(hi, act.out_hi);
    if (lo > hi) std::swap(lo, hi); // degenerate-interval wobble guard
    return {lo, hi};
}

} // namespace

std::vector<Interval> abstract_eval_all_nodes(const ExprGraph& graph, const IntervalBox& box) {
    if (box.dim() != graph.input_dim()) {
        throw DimensionError("box has dimension " + std::to_string(box.dim()) +
                             ", graph expects " + std::to_string(graph.input_dim()));
    }
    for (const Interval& d : box.dims) {
        if (!(d.lo <= d.hi)) throw DomainError("box interval with lo > hi");
        if (!d.finite()) throw DomainError("box interval must be finite");
    }
    const auto& nodes = graph.nodes();
    std::vector<Interval> vals(nodes.size());
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        const ExprNode& node = nodes[id];
        switch (node.kind) {
        case NodeKind::Const:
            vals[id] = Interval::point(node.value);
            break;
        case NodeKind::Input:
            vals[id] = box.dims[static_cast<std::size_t>(node.a - 1)];
            break;
        case NodeKind::Sum:
            vals[id] = add(vals[node.a], vals[node.b]);
            break;
        case NodeKind::Scale:
            vals[id] = scale(node.value, vals[node.a]);
            break;
        case NodeKind::Act:
            vals[id] = apply_activation(graph.activations()[node.act], vals[node.a]);
            break;
        }
    }
    return vals;
}

std::vector<Interval> abstract_eval(const ExprGraph& graph, const IntervalBox& box) {
    std::vector<Interval> vals = abstract_eval_all_nodes(graph, box);
    std::vector<Interval> out;
    out.reserve(graph.outputs().size());
    for (std::int32_t id : graph.outputs()) out.push_back(vals[id]);
    return out;
}

Interval sampled_activation_range(const ScalarFn& fn, double lo, double hi, int samples) {
    double mn = kInf, mx = -kInf;
    for (int i = 0; i <= samples; ++i) {
        double x = (i == samples) ? hi : lo + (hi - lo) * static_cast<double>(i) / samples;
        double v = fn(x);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return {mn, mx};
}

} // namespace iua
