#include "iua/expr.hpp"
#include "iua/errors.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace iua {

GraphActivation GraphActivation::from_profile(const ActivationProfile& p, bool normalized) {
    GraphActivation ga;
    ga.profile = p.name;
    ga.normalized = normalized;
    ga.monotone = p.monotone;
    if (normalized) {
        if (!p.is_squashed()) {
            throw Error("activation '" + p.name + "' has not been squashed");
        }
        ga.fn = p.normalized;
        ga.out_lo = 0.0;
        ga.out_hi = 1.0;
    } else {
        ga.fn = p.raw;
        ga.out_lo = p.lim_lo; // left limit is a lower bound for monotone raw
        ga.out_hi = p.bounded ? p.lim_hi : std::numeric_limits<double>::infinity();
    }
    return ga;
}

ExprGraph::ExprGraph(int input_dim, std::vector<ExprNode> nodes,
                     std::vector<GraphActivation> activations,
                     std::vector<std::int32_t> outputs)
    : input_dim_(input_dim),
      nodes_(std::move(nodes)),
      acts_(std::move(activations)),
      outputs_(std::move(outputs)) {
    validate();
}

void ExprGraph::validate() const {
    if (input_dim_ < 0) throw DimensionError("negative input dimension");
    if (outputs_.empty()) throw ShapeError("graph has no outputs");
    const auto n = static_cast<std::int32_t>(nodes_.size());
    for (std::int32_t id = 0; id < n; ++id) {
        const ExprNode& node = nodes_[id];
        switch (node.kind) {
        case NodeKind::Const:
            if (!std::isfinite(node.value)) throw Error("non-finite constant");
            break;
        case NodeKind::Input:
            if (node.a < 1 || node.a > input_dim_) {
                throw DimensionError("input index " + std::to_string(node.a) +
                                     " outside 1.." + std::to_string(input_dim_));
            }
            break;
        case NodeKind::Sum:
            if (node.a < 0 || node.a >= id || node.b < 0 || node.b >= id) {
                throw ShapeError("sum node references a later or invalid node");
            }
            break;
        case NodeKind::Scale:
            if (!std::isfinite(node.value)) throw Error("non-finite scale coefficient");
            if (node.a < 0 || node.a >= id) throw ShapeError("scale child invalid");
            break;
        case NodeKind::Act:
            if (node.a < 0 || node.a >= id) throw ShapeError("act child invalid");
            if (node.act < 0 || node.act >= static_cast<std::int32_t>(acts_.size())) {
                throw ShapeError("act node references unknown activation");
            }
            break;
        }
    }
    for (std::int32_t out : outputs_) {
        if (out < 0 || out >= n) throw ShapeError("output id out of range");
    }
}

std::vector<double> ExprGraph::eval_all_nodes(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != input_dim_) {
        throw DimensionError("input has length " + std::to_string(x.size()) +
                             ", graph expects " + std::to_string(input_dim_));
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw NumericOverflowError("non-finite input value");
    }
    std::vector<double> vals(nodes_.size());
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
        const ExprNode& node = nodes_[id];
        double v = 0.0;
        switch (node.kind) {
        case NodeKind::Const: v = node.value; break;
        case NodeKind::Input: v = x[static_cast<std::size_t>(node.a - 1)]; break;
        case NodeKind::Sum: v = vals[node.a] + vals[node.b]; break;
        case NodeKind::Scale: v = node.value * vals[node.a]; break;
        case NodeKind::Act: v = acts_[node.act].fn(vals[node.a]); break;
        }
        if (!std::isfinite(v)) {
            throw NumericOverflowError("non-finite intermediate at node " + std::to_string(id));
        }
        vals[id] = v;
    }
    return vals;
}

std::vector<double> ExprGraph::eval(std::span<const double> x) const {
    std::vector<double> vals = eval_all_nodes(x);
    std::vector<double> out;
    out.reserve(outputs_.size());
    for (std::int32_t id : outputs_) out.push_back(vals[id]);
    return out;
}

GraphBuilder::GraphBuilder(int input_dim) : input_dim_(input_dim) {
    if (input_dim < 0) throw DimensionError("negative input dimension");
}

int GraphBuilder::add_activation(const ActivationProfile& p, bool normalized) {
    GraphActivation ga = GraphActivation::from_profile(p, normalized);
    for (std::size_t i = 0; i < acts_.size(); ++i) {
        if (acts_[i].profile == ga.profile && acts_[i].normalized == ga.normalized) {
            return static_cast<int>(i);
        }
    }
    acts_.push_back(std::move(ga));
    return static_cast<int>(acts_.size() - 1);
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t node_hash(const ExprNode& n) {
    std::uint64_t h = static_cast<std::uint64_t>(n.kind);
    h = mix(h, std::bit_cast<std::uint64_t>(n.value));
    h = mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(n.a)));
    h = mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(n.b)));
    h = mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(n.act)));
    return h;
}

bool node_equal(const ExprNode& x, const ExprNode& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b && x.act == y.act &&
           std::bit_cast<std::uint64_t>(x.value) == std::bit_cast<std::uint64_t>(y.value);
}

} // namespace

std::int32_t GraphBuilder::intern(const ExprNode& n) {
    const std::uint64_t h = node_hash(n);
    auto& bucket = pool_[h];
    for (std::int32_t id : bucket) {
        if (node_equal(nodes_[id], n)) return id;
    }
    nodes_.push_back(n);
    const auto id = static_cast<std::int32_t>(nodes_.size() - 1);
    bucket.push_back(id);
    return id;
}

std::int32_t GraphBuilder::add_const(double c) {
    if (!std::isfinite(c)) throw Error("non-finite constant");
    ExprNode n;
    n.kind = NodeKind::Const;
    n.value = c;
    return intern(n);
}

std::int32_t GraphBuilder::add_input(int index_1based) {
    if (index_1based < 1 || index_1based > input_dim_) {
        throw DimensionError("input index " + std::to_string(index_1based) + " outside 1.." +
                             std::to_string(input_dim_));
    }
    ExprNode n;
    n.kind = NodeKind::Input;
    n.a = index_1based;
    return intern(n);
}

std::int32_t GraphBuilder::add_sum(std::int32_t left, std::int32_t right) {
    const auto sz = static_cast<std::int32_t>(nodes_.size());
    if (left < 0 || left >= sz || right < 0 || right >= sz) throw ShapeError("sum child invalid");
    ExprNode n;
    n.kind = NodeKind::Sum;
    n.a = std::min(left, right); // commutative: canonical order improves pooling
    n.b = std::max(left, right);
    return intern(n);
}

std::int32_t GraphBuilder::add_scale(double c, std::int32_t child) {
    if (!std::isfinite(c)) throw Error("non-finite scale coefficient");
    if (child < 0 || child >= static_cast<std::int32_t>(nodes_.size())) {
        throw ShapeError("scale child invalid");
    }
    ExprNode n;
    n.kind = NodeKind::Scale;
    n.value = c;
    n.a = child;
    return intern(n);
}

std::int32_t GraphBuilder::add_act(int act_id, std::int32_t child) {
    if (act_id < 0 || act_id >= static_cast<int>(acts_.size())) {
        throw ShapeError("unknown activation id");
    }
    if (child < 0 || child >= static_cast<std::int32_t>(nodes_.size())) {
        throw ShapeError("act child invalid");
    }
    ExprNode n;
    n.kind = NodeKind::Act;
    n.a = child;
    n.act = act_id;
    return intern(n);
}

std::int32_t GraphBuilder::add_affine(double scale, std::int32_t node, double offset) {
    std::int32_t scaled = (scale == 1.0) ? node : add_scale(scale, node);
    if (offset == 0.0) return scaled;
    return add_sum(scaled, add_const(offset));
}

std::int32_t GraphBuilder::add_sum_of(std::span<const std::int32_t> terms) {
    if (terms.empty()) return add_const(0.0);
    std::int32_t acc = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) acc = add_sum(acc, terms[i]);
    return acc;
}

void GraphBuilder::set_outputs(std::vector<std::int32_t> outputs) {
    outputs_ = std::move(outputs);
}

ExprGraph GraphBuilder::finish() {
    ExprGraph g(input_dim_, std::move(nodes_), std::move(acts_), std::move(outputs_));
    nodes_.clear();
    acts_.clear();
    outputs_.clear();
    pool_.clear();
    return g;
}

} // namespace iua
