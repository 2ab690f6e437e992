#pragma once

#include "iua/activation.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace iua {

enum class NodeKind : std::uint8_t { Const, Input, Sum, Scale, Act };

/// One node of a network expression DAG. The grammar is
///   c | x_i | n1 + n2 | c * n1 | t(n1)
/// Subtraction is expressed as Sum with Scale(-1, .). Activation nodes are
/// unary; the k-ary vector-grammar form is not supported.
struct ExprNode {
    NodeKind kind = NodeKind::Const;
    double value = 0.0;  // Const: c; Scale: coefficient
    std::int32_t a = -1; // Sum: left; Scale/Act: child; Input: 1-based index
    std::int32_t b = -1; // Sum: right
    std::int32_t act = -1;

    friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

/// An activation entry attached to a graph. Entries are resolved from a
/// profile name so graphs round-trip through JSON; `normalized` selects the
/// squashed (0,1)-limit variant. `out_lo`/`out_hi` give a closed range the
/// function is known to map into (+-inf when unbounded on that side).
struct GraphActivation {
    std::string profile;
    bool normalized = true;
    ScalarFn fn;
    bool monotone = true;
    double out_lo = 0.0;
    double out_hi = 1.0;

    static GraphActivation from_profile(const ActivationProfile& p, bool normalized);
};

/// Immutable expression DAG. Nodes are stored in topological order (every
/// node references only earlier ids), so evaluation is a single forward pass.
/// Safe to share across threads once built.
class ExprGraph {
public:
    ExprGraph() = default;
    ExprGraph(int input_dim, std::vector<ExprNode> nodes,
              std::vector<GraphActivation> activations, std::vector<std::int32_t> outputs);

    int input_dim() const { return input_dim_; }
    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<ExprNode>& nodes() const { return nodes_; }
    const std::vector<GraphActivation>& activations() const { return acts_; }
    const std::vector<std::int32_t>& outputs() const { return outputs_; }

    /// Concrete forward evaluation; one result per output.
    std::vector<double> eval(std::span<const double> x) const;

    /// Evaluates every node, returning the full value vector (used by tests
    /// and plotting to inspect interior fragments).
    std::vector<double> eval_all_nodes(std::span<const double> x) const;

private:
    void validate() const;

    int input_dim_ = 0;
    std::vector<ExprNode> nodes_;
    std::vector<GraphActivation> acts_;
    std::vector<std::int32_t> outputs_;
};

/// Append-only graph constructor with hash-consing: structurally identical
/// nodes are pooled, so repeated fragments (shared step functions, literal
/// gadgets) cost one node. Ids are dense and topologically ordered by
/// construction.
class GraphBuilder {
public:
    explicit GraphBuilder(int input_dim);

    int add_activation(const ActivationProfile& p, bool normalized = true);
    int activation_count() const { return acts_.size(); }

    std::int32_t add_const(double c);
    std::int32_t add_input(int index_1based);
    std::int32_t add_sum(std::int32_t left, std::int32_t right);
    std::int32_t add_scale(double c, std::int32_t child);
    std::int32_t add_act(int act_id, std::int32_t child);

    /// scale * node + offset
    std::int32_t add_affine(double scale, std::int32_t node, double offset);
    /// Sum of a node list (0 terms yields Const(0)).
    std::int32_t add_sum_of(std::span<const std::int32_t> terms);

    void set_outputs(std::vector<std::int32_t> outputs);
    std::size_t node_count() const { return nodes_.size(); }

    /// Finalizes the graph. The builder is left empty.
    ExprGraph finish();

private:
    std::int32_t intern(const ExprNode& n);

    int input_dim_;
    std::vector<ExprNode> nodes_;
    std::vector<GraphActivation> acts_;
    std::vector<std::int32_t> outputs_;
    std::unordered_map<std::uint64_t, std::vector<std::int32_t>> pool_;
};

} // namespace iua
