#pragma once

#include "iua/expr.hpp"
#include "iua/interval.hpp"

#include <random>
#include <string>
#include <vector>

namespace iua::selfcheck {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Random expression DAG over m inputs using raw and normalized registry
/// activations; all intermediates stay finite on [-bound, bound]^m boxes.
ExprGraph random_graph(std::mt19937_64& rng, int input_dim, int extra_nodes = 12);

/// Random box inside [-bound, bound]^m.
IntervalBox random_box(std::mt19937_64& rng, int dim, double bound = 4.0);

/// Uniform point inside a box.
std::vector<double> random_point(std::mt19937_64& rng, const IntervalBox& box);

/// Soundness fuzz: random (graph, box) pairs, `points` samples each;
/// concrete outputs must lie in the abstract output with zero slack.
/// Returns the number of membership violations.
long soundness_fuzz(unsigned seed, int graphs, int points_per_box);

/// Quick whole-library invariant sweep (the `selftest` subcommand).
std::vector<CheckResult> run_all(unsigned seed);

} // namespace iua::selfcheck
