#pragma once

#include "iua/expr.hpp"
#include "iua/interval.hpp"

#include <vector>

namespace iua {

/// Sound interval abstract interpretation of a graph: one interval per
/// output, containing eval(graph, x) for every x in the box. Arithmetic
/// transformers round outward one ulp (exact operations — constants, inputs,
/// scaling by 0 or a power of two — skip rounding); activation transformers
/// round outward two ulps and clamp to the activation's declared range.
std::vector<Interval> abstract_eval(const ExprGraph& graph, const IntervalBox& box);

/// Full per-node abstract values (tests and diagnostics).
std::vector<Interval> abstract_eval_all_nodes(const ExprGraph& graph, const IntervalBox& box);

/// Generic activation range evaluator: min/max of fn over [lo, hi] from a
/// dense sample including both endpoints. Exact for monotone fn; used as the
/// agreement oracle for the monotone fast path.
Interval sampled_activation_range(const ScalarFn& fn, double lo, double hi, int samples = 1024);

} // namespace iua
