#include "iua/json_io.hpp"
#include "iua/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace iua {

namespace {

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::Const: return "const";
    case NodeKind::Input: return "input";
    case NodeKind::Sum: return "sum";
    case NodeKind::Scale: return "scale";
    case NodeKind::Act: return "act";
    }
    return "?";
}

} // namespace

Json graph_to_json(const ExprGraph& g) {
    Json j;
    j["input_dim"] = g.input_dim();
    Json acts = Json::array();
    for (const GraphActivation& a : g.activations()) {
        acts.push_back({{"profile", a.profile}, {"normalized", a.normalized}});
    }
    j["activations"] = std::move(acts);
    Json nodes = Json::array();
    for (std::size_t id = 0; id < g.nodes().size(); ++id) {
        const ExprNode& n = g.nodes()[id];
        Json rec{{"id", id}, {"kind", kind_name(n.kind)}};
        switch (n.kind) {
        case NodeKind::Const: rec["c"] = n.value; break;
        case NodeKind::Input: rec["i"] = n.a; break;
        case NodeKind::Sum:
            rec["left"] = n.a;
            rec["right"] = n.b;
            break;
        case NodeKind::Scale:
            rec["c"] = n.value;
            rec["child"] = n.a;
            break;
        case NodeKind::Act:
            rec["act"] = n.act;
            rec["child"] = n.a;
            break;
        }
        nodes.push_back(std::move(rec));
    }
    j["nodes"] = std::move(nodes);
    j["outputs"] = g.outputs();
    return j;
}

ExprGraph graph_from_json(const Json& j) {
    const int input_dim = j.at("input_dim").get<int>();
    std::vector<GraphActivation> acts;
    for (const Json& a : j.at("activations")) {
        const std::string profile = a.at("profile").get<std::string>();
        const bool normalized = a.at("normalized").get<bool>();
        if (!is_registered_activation(profile)) {
            throw ParseError("graph references unregistered activation '" + profile + "'");
        }
        acts.push_back(GraphActivation::from_profile(activation_by_name(profile), normalized));
    }
    std::vector<ExprNode> nodes;
    nodes.reserve(j.at("nodes").size());
    for (const Json& rec : j.at("nodes")) {
        if (rec.at("id").get<std::size_t>() != nodes.size()) {
            throw ParseError("graph nodes must be dense and ordered by id");
        }
        const std::string kind = rec.at("kind").get<std::string>();
        ExprNode n;
        if (kind == "const") {
            n.kind = NodeKind::Const;
            n.value = rec.at("c").get<double>();
        } else if (kind == "input") {
            n.kind = NodeKind::Input;
            n.a = rec.at("i").get<std::int32_t>();
        } else if (kind == "sum") {
            n.kind = NodeKind::Sum;
            n.a = rec.at("left").get<std::int32_t>();
            n.b = rec.at("right").get<std::int32_t>();
        } else if (kind == "scale") {
            n.kind = NodeKind::Scale;
            n.value = rec.at("c").get<double>();
            n.a = rec.at("child").get<std::int32_t>();
        } else if (kind == "act") {
            n.kind = NodeKind::Act;
            n.act = rec.at("act").get<std::int32_t>();
            n.a = rec.at("child").get<std::int32_t>();
        } else {
            throw ParseError("graph node of unknown kind '" + kind + "'");
        }
        nodes.push_back(n);
    }
    return ExprGraph(input_dim, std::move(nodes), std::move(acts),
                     j.at("outputs").get<std::vector<std::int32_t>>());
}

Json box_to_json(const IntervalBox& b) {
    Json dims = Json::array();
    for (const Interval& iv : b.dims) dims.push_back({iv.lo, iv.hi});
    return Json{{"dims", std::move(dims)}};
}

IntervalBox box_from_json(const Json& j) {
    std::vector<Interval> dims;
    for (const Json& d : j.at("dims")) {
        if (!d.is_array() || d.size() != 2) throw ParseError("box dim must be [lo, hi]");
        dims.emplace_back(d[0].get<double>(), d[1].get<double>());
    }
    if (dims.empty()) throw ParseError("box needs at least one dimension");
    return IntervalBox(std::move(dims));
}

Json blueprint_to_json(const IuaBlueprint& bp) {
    Json j;
    j["delta"] = bp.delta;
    j["tau"] = bp.tau;
    j["shift"] = bp.shift;
    j["u_max"] = bp.u_max;
    j["kay"] = bp.kay;
    j["degenerate"] = bp.degenerate;
    j["g_count"] = bp.g_count;
    j["act"] = bp.act_name;
    j["range_gap"] = bp.range_gap;
    if (bp.cal) {
        j["cal"] = {{"theta", bp.cal->theta},
                    {"D", bp.cal->dee},
                    {"epsilon", bp.cal->epsilon},
                    {"mu", bp.cal->mu}};
    }
    if (bp.grid) {
        j["grid"] = {{"origin", bp.grid->origin()},
                     {"cells", bp.grid->cells()},
                     {"epsilon", bp.grid->epsilon()}};
    }
    j["slice_boxes"] = bp.slice_boxes;
    j["fn"] = {{"kind", bp.fn.kind},
               {"value", bp.fn.value},
               {"csv", bp.fn.csv_text},
               {"lipschitz", bp.fn.lipschitz},
               {"domain", box_to_json(bp.fn.domain)}};
    j["network"] = graph_to_json(bp.network);
    return j;
}

IuaBlueprint blueprint_from_json(const Json& j) {
    IuaBlueprint bp;
    bp.delta = j.at("delta").get<double>();
    bp.tau = j.at("tau").get<double>();
    bp.shift = j.at("shift").get<double>();
    bp.u_max = j.at("u_max").get<double>();
    bp.kay = j.at("kay").get<int>();
    bp.degenerate = j.at("degenerate").get<bool>();
    bp.g_count = j.at("g_count").get<std::uint64_t>();
    bp.act_name = j.at("act").get<std::string>();
    bp.range_gap = j.at("range_gap").get<double>();
    if (j.contains("cal")) {
        const Json& c = j.at("cal");
        Calibration cal = Calibration::make(c.at("theta").get<double>(),
                                            c.at("D").get<double>(),
                                            c.at("epsilon").get<double>());
        if (cal.mu != c.at("mu").get<double>()) throw ParseError("blueprint: mu mismatch");
        bp.cal = cal;
    }
    if (j.contains("grid")) {
        const Json& g = j.at("grid");
        bp.grid = Grid::from_parts(g.at("origin").get<std::vector<double>>(),
                                   g.at("cells").get<std::vector<int>>(),
                                   g.at("epsilon").get<double>());
    }
    bp.slice_boxes = j.at("slice_boxes").get<std::vector<std::vector<std::uint64_t>>>();
    const Json& fn = j.at("fn");
    bp.fn.kind = fn.at("kind").get<std::string>();
    bp.fn.value = fn.at("value").get<double>();
    bp.fn.csv_text = fn.at("csv").get<std::string>();
    bp.fn.lipschitz = fn.at("lipschitz").get<double>();
    bp.fn.domain = box_from_json(fn.at("domain"));
    bp.network = graph_from_json(j.at("network"));
    bp.assert_valid();
    return bp;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << j.dump(1) << '\n';
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("bad json in '" + path + "': " + e.what());
    }
    return j;
}

} // namespace iua
