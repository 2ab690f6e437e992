#pragma once

#include "iua/builder.hpp"
#include "iua/expr.hpp"
#include "iua/interval.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace iua {

using Json = nlohmann::json;

/// Graph JSON: {"input_dim", "activations": [{"profile","normalized"}],
/// "nodes": [{"id","kind",...payload}], "outputs": [ids]}. Coefficients are
/// plain JSON numbers (printed shortest-exact, so they round-trip bitwise).
/// Only registered activation profiles can be reconstructed.
Json graph_to_json(const ExprGraph& g);
ExprGraph graph_from_json(const Json& j);

/// Box JSON: {"dims": [[lo, hi], ...]}.
Json box_to_json(const IntervalBox& b);
IntervalBox box_from_json(const Json& j);

Json blueprint_to_json(const IuaBlueprint& bp);
IuaBlueprint blueprint_from_json(const Json& j);

void save_json_file(const std::string& path, const Json& j);
Json load_json_file(const std::string& path);

} // namespace iua
