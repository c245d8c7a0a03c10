#pragma once

#include <optional>

#include <boost/container/small_vector.hpp>
#include <string>
#include <unordered_map>
#include <vector>

#include "hornmcts/expr.hpp"
#include "hornmcts/horner.hpp"

namespace hornmcts {

using NodeId = std::uint32_t;

using Children = boost::container::small_vector<NodeId, 4>;

enum class NodeKind : std::uint8_t { Atom, Const, Power, Sum, Product };

struct DagNode {
  NodeKind kind = NodeKind::Const;
  /// Atom: atom id. Const: index into the constant table. Power: exponent.
  std::uint32_t payload = 0;
  /// Power: {base}. Sum/Product: sorted ascending, duplicates allowed.
  Children children;

  bool operator==(const DagNode &) const = default;
};

struct DagNodeHash {
  std::size_t operator()(const DagNode &n) const noexcept;
};

/// Hash-consed expression DAG. Nodes are append-only and every child id is
/// smaller than its parent's, so ascending id order is a topological order.
/// Structurally identical nodes are stored once.
class Dag {
public:
  NodeId atom(AtomId id);
  NodeId constant(const Coeff &value);
  NodeId power(NodeId base, std::uint32_t exp);
  /// No flattening: a Sum child of a Sum stays a separate (shared) node.
  NodeId sum(Children children);
  NodeId product(Children children);
  /// Interns an arbitrary node; children are sorted for Sum/Product.
  NodeId intern(DagNode node);

  void add_root(NodeId id) { roots_.push_back(id); }
  const std::vector<NodeId> &roots() const { return roots_; }

  const DagNode &node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }
  const Coeff &constant_value(NodeId id) const { return consts_[nodes_[id].payload]; }
  bool is_minus_one(NodeId id) const;

  /// Ids reachable from the roots, ascending.
  std::vector<NodeId> reachable() const;

private:
  std::vector<DagNode> nodes_;
  std::vector<NodeId> roots_;
  std::vector<Coeff> consts_;
  std::vector<bool> minus_one_;
  std::unordered_map<DagNode, NodeId, DagNodeHash> index_;
};

struct SimplifyResult {
  Dag dag;
  OpCount ops;
  Scheme scheme;
};

/// Bottom-up interning of a Horner tree; the tree becomes the single root.
Dag build_dag(const ExprTree &t);

/// Copy of the reachable part of d, re-interned.
Dag compact(const Dag &d);

/// Greedy AC common-subexpression elimination. Until fixpoint: take the
/// (operator, child pair) contained in the most same-operator nodes (at least
/// two, one occurrence per node), ties by smallest child ids, materialize it
/// as a node and substitute it into every containing node.
Dag eliminate_pairs(const Dag &d);
/// Same result as eliminate_pairs, by rebuilding the whole DAG after every
/// substitution. Slow; kept as the oracle for the in-place version.
Dag eliminate_pairs_reference(const Dag &d);

/// Counts each reachable node once, with the same per-node rule as
/// tree_op_count.
OpCount dag_op_count(const Dag &d);

/// Horner, then DAG, then pair elimination. ops.total() is the search score.
SimplifyResult simplify(const Expression &e, const Scheme &s);

/// Same pipeline via build_dag(apply_scheme(...)); kept as the reference the
/// fused builder in simplify() is checked against.
SimplifyResult simplify_reference(const Expression &e, const Scheme &s);

/// Operation count only, for an effective (already direction-applied) order
/// that is known to be valid. This is the search hot path.
OpCount score_order(const Expression &e, std::span<const AtomId> effective);

Residue eval_dag_mod_p(const Dag &d, const Assignment &assignment, Residue p);

/// One reachable node per line in topological order, e.g. "t4 = mul t0 t3",
/// followed by "return tN" for each root.
std::string to_three_address(const Dag &d, const AtomTable &atoms);

} // namespace hornmcts
