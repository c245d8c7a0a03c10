#include "hornmcts/cse.hpp"

#include <algorithm>

#include "horner_kernel.hpp"

namespace hornmcts {

std::size_t DagNodeHash::operator()(const DagNode &n) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ (static_cast<std::uint64_t>(n.kind) << 32U) ^ n.payload;
  for (NodeId c : n.children) {
    h = (h ^ c) * 0x100000001b3ULL;
    h ^= h >> 29U;
  }
  return static_cast<std::size_t>(h);
}

NodeId Dag::intern(DagNode node) {
  if (node.kind == NodeKind::Sum || node.kind == NodeKind::Product) {
    std::sort(node.children.begin(), node.children.end());
  }
  if (auto it = index_.find(node); it != index_.end()) {
    return it->second;
  }
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(node);
  index_.emplace(std::move(node), id);
  return id;
}

NodeId Dag::atom(AtomId id) { return intern({NodeKind::Atom, id, {}}); }

NodeId Dag::constant(const Coeff &value) {
  auto it = std::find(consts_.begin(), consts_.end(), value);
  std::uint32_t idx = 0;
  if (it == consts_.end()) {
    idx = static_cast<std::uint32_t>(consts_.size());
    consts_.push_back(value);
    minus_one_.push_back(value == -1);
  } else {
    idx = static_cast<std::uint32_t>(it - consts_.begin());
  }
  return intern({NodeKind::Const, idx, {}});
}

NodeId Dag::power(NodeId base, std::uint32_t exp) {
  if (exp == 1) {
    return base;
  }
  return intern({NodeKind::Power, exp, {base}});
}

NodeId Dag::sum(Children children) { return intern({NodeKind::Sum, 0, std::move(children)}); }

NodeId Dag::product(Children children) {
  return intern({NodeKind::Product, 0, std::move(children)});
}

bool Dag::is_minus_one(NodeId id) const {
  const auto &n = nodes_[id];
  return n.kind == NodeKind::Const && minus_one_[n.payload];
}

std::vector<NodeId> Dag::reachable() const {
  std::vector<bool> mark(nodes_.size(), false);
  for (NodeId r : roots_) {
    mark[r] = true;
  }
  // children have smaller ids, so one descending sweep suffices
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (mark[i]) {
      for (NodeId c : nodes_[i].children) {
        mark[c] = true;
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (mark[i]) {
      out.push_back(i);
    }
  }
  return out;
}

namespace {

/// Builds DAG nodes directly from the Horner kernel, flattening like
/// ExprTree's factories so the result matches build_dag(apply_scheme(...)).
struct DagBuilder {
  using Handle = NodeId;
  const Expression &e;
  Dag &dag;

  Handle atom(AtomId id) { return dag.atom(id); }
  Handle constant(std::uint32_t term) { return dag.constant(e.terms()[term].coeff); }
  Handle unit() { return dag.constant(1); }
  Handle zero() { return dag.constant(0); }
  Handle power(Handle base, std::uint32_t exp) { return dag.power(base, exp); }

  Handle nary(NodeKind kind, std::vector<Handle> cs) {
    Children flat;
    for (NodeId c : cs) {
      const auto &n = dag.node(c);
      if (n.kind == kind) {
        flat.insert(flat.end(), n.children.begin(), n.children.end());
      } else {
        flat.push_back(c);
      }
    }
    if (kind == NodeKind::Product && flat.size() > 1) {
      flat.erase(std::remove_if(flat.begin(), flat.end(),
                                [&](NodeId c) {
                                  return dag.node(c).kind == NodeKind::Const && dag.constant_value(c) == 1;
                                }),
                 flat.end());
      if (flat.empty()) {
        return unit();
      }
    }
    if (flat.size() == 1) {
      return flat.front();
    }
    return dag.intern({kind, 0, std::move(flat)});
  }

  Handle product(std::vector<Handle> cs) { return nary(NodeKind::Product, std::move(cs)); }
  Handle sum(std::vector<Handle> cs) { return nary(NodeKind::Sum, std::move(cs)); }
};

NodeId intern_tree(const ExprTree &t, Dag &dag) {
  switch (t.kind) {
  case ExprTree::Kind::Atom:
    return dag.atom(t.atom);
  case ExprTree::Kind::Const:
    return dag.constant(t.value);
  case ExprTree::Kind::Power:
    return dag.power(intern_tree(t.children[0], dag), t.exp);
  case ExprTree::Kind::Sum:
  case ExprTree::Kind::Product: {
    Children cs;
    for (const auto &c : t.children) {
      cs.push_back(intern_tree(c, dag));
    }
    return t.kind == ExprTree::Kind::Sum ? dag.sum(std::move(cs)) : dag.product(std::move(cs));
  }
  }
  return 0;
}

/// Copies node `id` of `from` into `to`, with children translated by `map`.
NodeId copy_node(const Dag &from, NodeId id, const std::vector<NodeId> &map, Dag &to) {
  const auto &n = from.node(id);
  switch (n.kind) {
  case NodeKind::Atom:
    return to.atom(n.payload);
  case NodeKind::Const:
    return to.constant(from.constant_value(id));
  default: {
    DagNode copy{n.kind, n.payload, {}};
    copy.children.reserve(n.children.size());
    for (NodeId c : n.children) {
      copy.children.push_back(map[c]);
    }
    return to.intern(std::move(copy));
  }
  }
}

/// Reachable nodes in an order that depends only on structure: by height,
/// then kind, then payload (constant value for Const), then the children's
/// positions in this order. Children come before parents.
std::vector<NodeId> canonical_order(const Dag &d) {
  const auto live = d.reachable();
  std::vector<std::uint32_t> height(d.size(), 0);
  std::uint32_t max_h = 0;
  for (NodeId id : live) {
    for (NodeId c : d.node(id).children) {
      height[id] = std::max(height[id], height[c] + 1);
    }
    max_h = std::max(max_h, height[id]);
  }
  std::vector<std::vector<NodeId>> levels(max_h + 1);
  for (NodeId id : live) {
    levels[height[id]].push_back(id);
  }
  std::vector<std::uint32_t> pos(d.size(), 0);
  std::vector<NodeId> out;
  out.reserve(live.size());
  std::vector<Children> keys(d.size());
  for (auto &level : levels) {
    for (NodeId id : level) {
      const auto &n = d.node(id);
      keys[id].clear();
      for (NodeId c : n.children) {
        keys[id].push_back(pos[c]);
      }
      if (n.kind == NodeKind::Sum || n.kind == NodeKind::Product) {
        std::sort(keys[id].begin(), keys[id].end());
      }
    }
    std::sort(level.begin(), level.end(), [&](NodeId x, NodeId y) {
      const auto &nx = d.node(x);
      const auto &ny = d.node(y);
      if (nx.kind != ny.kind) {
        return nx.kind < ny.kind;
      }
      if (nx.kind == NodeKind::Const) {
        return d.constant_value(x) < d.constant_value(y);
      }
      if (nx.payload != ny.payload) {
        return nx.payload < ny.payload;
      }
      return std::lexicographical_compare(keys[x].begin(), keys[x].end(), keys[y].begin(), keys[y].end());
    });
    for (NodeId id : level) {
      pos[id] = static_cast<std::uint32_t>(out.size());
      out.push_back(id);
    }
  }
  return out;
}

struct PairChoice {
  NodeKind kind;
  NodeId a;
  NodeId b;
};

std::uint64_t pair_key(NodeKind kind, NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(kind == NodeKind::Product) << 62U) |
         (static_cast<std::uint64_t>(a) << 31U) | b;
}

/// Picks the pair to eliminate. `visit(f)` must call f(kind, keys) for every
/// live Sum/Product node, where `keys` are the node's children mapped to an
/// order-preserving integer key and sorted ascending. The returned a, b are
/// keys, not node ids.
template <class Visit> std::optional<PairChoice> most_frequent_pair(Visit visit) {
  std::vector<std::uint64_t> all;
  std::vector<std::uint64_t> local;
  visit([&](NodeKind kind, const auto &cs) {
    local.clear();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i > 0 && cs[i] == cs[i - 1]) {
        continue; // repeats only yield pairs already produced by the first copy
      }
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        if (j > i + 1 && cs[j] == cs[j - 1]) {
          continue;
        }
        local.push_back(pair_key(kind, cs[i], cs[j]));
      }
    }
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
    all.insert(all.end(), local.begin(), local.end());
  });
  std::sort(all.begin(), all.end());
  std::size_t best_count = 1;
  std::uint64_t best_key = 0;
  const std::uint64_t mask = (1ULL << 62U) - 1;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) {
      ++j;
    }
    const std::size_t count = j - i;
    const std::uint64_t key = all[i];
    // more occurrences first, then smallest (a, b), then Sum before Product
    const bool better = count > best_count ||
                        (count == best_count && ((key & mask) < (best_key & mask) ||
                                                 ((key & mask) == (best_key & mask) && key < best_key)));
    if (count >= 2 && better) {
      best_count = count;
      best_key = key;
    }
    i = j;
  }
  if (best_count < 2) {
    return std::nullopt;
  }
  const auto kind = (best_key >> 62U) != 0 ? NodeKind::Product : NodeKind::Sum;
  const auto a = static_cast<NodeId>((best_key >> 31U) & 0x7FFFFFFFULL);
  const auto b = static_cast<NodeId>(best_key & 0x7FFFFFFFULL);
  return PairChoice{kind, a, b};
}

std::optional<PairChoice> most_frequent_pair(const Dag &d, const std::vector<NodeId> &live) {
  return most_frequent_pair([&](auto &&f) {
    for (NodeId id : live) {
      const auto &n = d.node(id);
      if (n.kind == NodeKind::Sum || n.kind == NodeKind::Product) {
        f(n.kind, n.children);
      }
    }
  });
}

/// Removes one a and one b from sorted `cs` if both are present.
bool take_pair(Children &cs, NodeId a, NodeId b) {
  auto ia = std::lower_bound(cs.begin(), cs.end(), a);
  if (ia == cs.end() || *ia != a) {
    return false;
  }
  auto ib = std::lower_bound(cs.begin(), cs.end(), b);
  if (a == b) {
    ib = ia + 1;
  }
  if (ib == cs.end() || *ib != b) {
    return false;
  }
  cs.erase(ib);
  cs.erase(ia);
  return true;
}

Dag rewrite(const Dag &d, const std::vector<NodeId> &live, const PairChoice &pick) {
  Dag out;
  std::vector<NodeId> map(d.size(), 0);
  for (NodeId id : live) {
    const auto &n = d.node(id);
    if (n.kind == pick.kind) {
      Children cs = n.children;
      if (take_pair(cs, pick.a, pick.b)) {
        DagNode shared{pick.kind, 0, {map[pick.a], map[pick.b]}};
        Children mapped;
        for (NodeId c : cs) {
          mapped.push_back(map[c]);
        }
        mapped.push_back(out.intern(std::move(shared)));
        map[id] = mapped.size() == 1 ? mapped.front() : out.intern({pick.kind, 0, std::move(mapped)});
        continue;
      }
    }
    map[id] = copy_node(d, id, map, out);
  }
  for (NodeId r : d.roots()) {
    out.add_root(map[r]);
  }
  return out;
}

/// In-place pair elimination. Produces exactly the DAG that repeated
/// rewrite() + re-interning produces, without copying the graph every pass.
///
/// Every node carries a rank that reproduces the id it would get after a
/// rebuild: ranks follow the topological order, and a new pair node is ranked
/// immediately before its first container. Sum/Product children are kept sorted
/// by rank, which is the order the hash index sees. When a rewritten node
/// becomes identical to another, the lower-ranked one survives and the change
/// propagates to the parents of the one that disappears.
class PairEliminator {
public:
  explicit PairEliminator(const Dag &&) = delete;
  /// Nodes unreachable from the roots are dropped, as compact() would.
  explicit PairEliminator(const Dag &d) : src_(d) {
    const std::size_t n = d.size();
    nodes_.reserve(n * 2);
    alive_.assign(n, 0);
    rank_.assign(n, UINT32_MAX);
    parents_.resize(n);
    pairs_.resize(n);
    index_.reserve(n * 2);
    for (NodeId id = 0; id < n; ++id) {
      nodes_.push_back(d.node(id));
    }
    for (NodeId id : canonical_order(d)) {
      alive_[id] = 1;
      rank_[id] = static_cast<std::uint32_t>(order_.size());
      order_.push_back(id);
      sort_children(nodes_[id].kind, nodes_[id].children);
      index_.emplace(nodes_[id], id);
      for (NodeId c : nodes_[id].children) {
        parents_[c].push_back(id);
      }
      add_pairs(id);
    }
    roots_ = d.roots();
  }

  void run() {
    while (step()) {
    }
  }

  OpCount count() const {
    OpCount c;
    for (NodeId id : order_) {
      if (!alive_[id]) {
        continue;
      }
      const auto &n = nodes_[id];
      if (n.kind == NodeKind::Sum) {
        c.add += n.children.size() - 1;
      } else if (n.kind == NodeKind::Product) {
        c.mul += n.children.size() - 1;
        if (std::any_of(n.children.begin(), n.children.end(), [&](NodeId x) { return is_minus_one(x); })) {
          c.mul -= 1;
        }
      } else if (n.kind == NodeKind::Power) {
        c.mul += n.payload - 1;
      }
    }
    return c;
  }

  Dag to_dag() const {
    Dag out;
    std::vector<NodeId> map(nodes_.size(), 0);
    for (NodeId id : order_) {
      if (!alive_[id]) {
        continue;
      }
      const auto &n = nodes_[id];
      if (n.kind == NodeKind::Atom) {
        map[id] = out.atom(n.payload);
      } else if (n.kind == NodeKind::Const) {
        map[id] = out.constant(src_.constant_value(id));
      } else {
        DagNode copy{n.kind, n.payload, {}};
        copy.children.reserve(n.children.size());
        for (NodeId c : n.children) {
          copy.children.push_back(map[c]);
        }
        map[id] = out.intern(std::move(copy));
      }
    }
    for (NodeId r : roots_) {
      out.add_root(map[r]);
    }
    return out;
  }

private:
  bool is_minus_one(NodeId id) const { return id < src_.size() && src_.is_minus_one(id); }

  /// Distinct (kind, a, b) keys of a Sum/Product node, a before b in rank.
  void add_pairs(NodeId id) {
    const auto &n = nodes_[id];
    auto &keys = pairs_[id];
    keys.clear();
    if (n.kind != NodeKind::Sum && n.kind != NodeKind::Product) {
      return;
    }
    const auto &cs = n.children;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i > 0 && cs[i] == cs[i - 1]) {
        continue;
      }
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        if (j > i + 1 && cs[j] == cs[j - 1]) {
          continue;
        }
        keys.push_back(pair_key(n.kind, cs[i], cs[j]));
      }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (auto k : keys) {
      ++counts_[k];
    }
  }

  void drop_pairs(NodeId id) {
    for (auto k : pairs_[id]) {
      auto it = counts_.find(k);
      if (--it->second == 0) {
        counts_.erase(it);
      }
    }
    pairs_[id].clear();
  }

  /// Same choice as the rebuild's most_frequent_pair: most containing nodes,
  /// then smallest (rank a, rank b), then Sum before Product.
  std::optional<PairChoice> pick() const {
    std::uint32_t best_count = 1;
    std::uint64_t best_key = 0;
    std::uint64_t best_ranks = 0;
    for (const auto &[key, count] : counts_) {
      if (count < best_count || count < 2) {
        continue;
      }
      const NodeId a = static_cast<NodeId>((key >> 31U) & 0x7FFFFFFFULL);
      const NodeId b = static_cast<NodeId>(key & 0x7FFFFFFFULL);
      const std::uint64_t ranks = (static_cast<std::uint64_t>(rank_[a]) << 32U) | rank_[b];
      if (count > best_count || ranks < best_ranks || (ranks == best_ranks && key < best_key)) {
        best_count = count;
        best_key = key;
        best_ranks = ranks;
      }
    }
    if (best_count < 2) {
      return std::nullopt;
    }
    const auto kind = (best_key >> 62U) != 0 ? NodeKind::Product : NodeKind::Sum;
    return PairChoice{kind, static_cast<NodeId>((best_key >> 31U) & 0x7FFFFFFFULL),
                      static_cast<NodeId>(best_key & 0x7FFFFFFFULL)};
  }

  bool step() {
    const auto choice = pick();
    if (!choice) {
      return false;
    }
    const NodeKind kind = choice->kind;
    const NodeId a = choice->a;
    const NodeId b = choice->b;

    std::vector<NodeId> containers;
    for (NodeId id : order_) {
      if (alive_[id] && nodes_[id].kind == kind && contains_pair(nodes_[id].children, a, b)) {
        containers.push_back(id);
      }
    }

    const NodeId p = add_pair_node(kind, a, b, containers.front());
    for (NodeId c : containers) {
      if (!alive_[c]) {
        continue;
      }
      Children cs = nodes_[c].children;
      remove_pair(cs, a, b);
      if (cs.empty()) {
        merge(c, p);
        continue;
      }
      cs.push_back(p);
      sort_children(kind, cs);
      update(c, std::move(cs));
    }
    return true;
  }

  bool contains_pair(const Children &cs, NodeId a, NodeId b) const {
    auto ia = std::find(cs.begin(), cs.end(), a);
    if (ia == cs.end()) {
      return false;
    }
    return a == b ? std::find(ia + 1, cs.end(), b) != cs.end() : std::find(cs.begin(), cs.end(), b) != cs.end();
  }

  static void remove_pair(Children &cs, NodeId a, NodeId b) {
    cs.erase(std::find(cs.begin(), cs.end(), a));
    cs.erase(std::find(cs.begin(), cs.end(), b));
  }

  void sort_children(NodeKind kind, Children &cs) const {
    if (kind == NodeKind::Sum || kind == NodeKind::Product) {
      std::sort(cs.begin(), cs.end(), [&](NodeId x, NodeId y) { return rank_[x] < rank_[y]; });
    }
  }

  NodeId add_pair_node(NodeKind kind, NodeId a, NodeId b, NodeId before) {
    DagNode n{kind, 0, {a, b}};
    sort_children(kind, n.children);
    const auto id = static_cast<NodeId>(nodes_.size());
    if (auto it = index_.find(n); it != index_.end()) {
      // an existing op(a, b) is itself a container and will merge into the new node
      index_.erase(it);
    }
    index_.emplace(n, id);
    nodes_.push_back(std::move(n));
    alive_.push_back(1);
    parents_.emplace_back();
    parents_[a].push_back(id);
    parents_[b].push_back(id);
    const auto pos = rank_[before];
    order_.insert(order_.begin() + pos, id);
    rank_.push_back(pos);
    for (std::size_t r = pos; r < order_.size(); ++r) {
      rank_[order_[r]] = static_cast<std::uint32_t>(r);
    }
    pairs_.emplace_back();
    add_pairs(id);
    return id;
  }

  void unindex(NodeId id) {
    if (auto it = index_.find(nodes_[id]); it != index_.end() && it->second == id) {
      index_.erase(it);
    }
  }

  /// Replaces the children of `id`, then restores hash-consing.
  void update(NodeId id, Children children) {
    unindex(id);
    drop_pairs(id);
    nodes_[id].children = std::move(children);
    add_pairs(id);
    for (NodeId c : nodes_[id].children) {
      parents_[c].push_back(id);
    }
    auto it = index_.find(nodes_[id]);
    if (it == index_.end()) {
      index_.emplace(nodes_[id], id);
      return;
    }
    const NodeId other = it->second;
    if (rank_[other] < rank_[id]) {
      merge(id, other);
    } else {
      index_.erase(it);
      index_.emplace(nodes_[id], id);
      merge(other, id);
    }
  }

  /// Retires `gone`; every reference to it now points at `keep`.
  void merge(NodeId gone, NodeId keep) {
    unindex(gone);
    drop_pairs(gone);
    alive_[gone] = 0;
    for (auto &r : roots_) {
      if (r == gone) {
        r = keep;
      }
    }
    auto parents = std::move(parents_[gone]);
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
    for (NodeId q : parents) {
      if (!alive_[q]) {
        continue;
      }
      auto cs = nodes_[q].children;
      if (std::find(cs.begin(), cs.end(), gone) == cs.end()) {
        continue;
      }
      std::replace(cs.begin(), cs.end(), gone, keep);
      sort_children(nodes_[q].kind, cs);
      update(q, std::move(cs));
    }
  }

  const Dag &src_;
  std::vector<DagNode> nodes_;
  std::vector<char> alive_;
  std::vector<NodeId> order_;     // rank -> node
  std::vector<std::uint32_t> rank_; // node -> rank
  std::vector<boost::container::small_vector<NodeId, 2>> parents_;
  std::unordered_map<DagNode, NodeId, DagNodeHash> index_;
  std::vector<NodeId> roots_;
  std::vector<boost::container::small_vector<std::uint64_t, 6>> pairs_; // per node, its distinct pair keys
  std::unordered_map<std::uint64_t, std::uint32_t> counts_;
};

} // namespace

Dag build_dag(const ExprTree &t) {
  Dag dag;
  dag.add_root(intern_tree(t, dag));
  return dag;
}

Dag compact(const Dag &d) {
  Dag out;
  std::vector<NodeId> map(d.size(), 0);
  for (NodeId id : canonical_order(d)) {
    map[id] = copy_node(d, id, map, out);
  }
  for (NodeId r : d.roots()) {
    out.add_root(map[r]);
  }
  return out;
}

Dag eliminate_pairs(const Dag &d) {
  PairEliminator pe(d);
  pe.run();
  return pe.to_dag();
}

Dag eliminate_pairs_reference(const Dag &d) {
  Dag cur = compact(d);
  while (true) {
    const auto live = cur.reachable();
    const auto pick = most_frequent_pair(cur, live);
    if (!pick) {
      return cur;
    }
    cur = rewrite(cur, live, *pick);
  }
}

OpCount dag_op_count(const Dag &d) {
  OpCount c;
  for (NodeId id : d.reachable()) {
    const auto &n = d.node(id);
    switch (n.kind) {
    case NodeKind::Sum:
      c.add += n.children.size() - 1;
      break;
    case NodeKind::Product:
      c.mul += n.children.size() - 1;
      if (std::any_of(n.children.begin(), n.children.end(), [&](NodeId x) { return d.is_minus_one(x); })) {
        c.mul -= 1;
      }
      break;
    case NodeKind::Power:
      c.mul += n.payload - 1;
      break;
    case NodeKind::Atom:
    case NodeKind::Const:
      break;
    }
  }
  return c;
}

namespace {

Dag horner_dag(const Expression &e, std::span<const AtomId> effective) {
  Dag dag;
  DagBuilder builder{e, dag};
  dag.add_root(detail::HornerKernel<DagBuilder>(e, effective, builder).run());
  return dag;
}

} // namespace

SimplifyResult simplify(const Expression &e, const Scheme &s) {
  validate_scheme(e, s);
  const auto order = effective_order(s);
  Dag dag = eliminate_pairs(horner_dag(e, order));
  const OpCount ops = dag_op_count(dag);
  return {std::move(dag), ops, s};
}

SimplifyResult simplify_reference(const Expression &e, const Scheme &s) {
  Dag dag = eliminate_pairs_reference(build_dag(apply_scheme(e, s)));
  const OpCount ops = dag_op_count(dag);
  return {std::move(dag), ops, s};
}

OpCount score_order(const Expression &e, std::span<const AtomId> effective) {
  const Dag dag = horner_dag(e, effective);
  PairEliminator pe(dag);
  pe.run();
  return pe.count();
}

Residue eval_dag_mod_p(const Dag &d, const Assignment &assignment, Residue p) {
  if (d.roots().empty()) {
    throw EvalError("DAG has no root");
  }
  std::vector<Residue> value(d.size(), 0);
  for (NodeId id : d.reachable()) {
    const auto &n = d.node(id);
    switch (n.kind) {
    case NodeKind::Atom: {
      auto it = assignment.find(n.payload);
      if (it == assignment.end()) {
        throw EvalError("no value assigned to atom " + std::to_string(n.payload));
      }
      value[id] = it->second % p;
      break;
    }
    case NodeKind::Const:
      value[id] = coeff_mod(d.constant_value(id), p);
      break;
    case NodeKind::Power:
      value[id] = pow_mod(value[n.children[0]], n.payload, p);
      break;
    case NodeKind::Sum: {
      Residue acc = 0;
      for (NodeId c : n.children) {
        acc = (acc + value[c]) % p;
      }
      value[id] = acc;
      break;
    }
    case NodeKind::Product: {
      Residue acc = 1 % p;
      for (NodeId c : n.children) {
        acc = mul_mod(acc, value[c], p);
      }
      value[id] = acc;
      break;
    }
    }
  }
  return value[d.roots().front()];
}

std::string to_three_address(const Dag &d, const AtomTable &atoms) {
  std::string out;
  for (NodeId id : d.reachable()) {
    const auto &n = d.node(id);
    out += 't' + std::to_string(id) + " = ";
    switch (n.kind) {
    case NodeKind::Atom:
      out += "atom " + atoms.text(n.payload);
      break;
    case NodeKind::Const:
      out += "const " + d.constant_value(id).str();
      break;
    case NodeKind::Power:
      out += "pow t" + std::to_string(n.children[0]) + ' ' + std::to_string(n.payload);
      break;
    case NodeKind::Sum:
    case NodeKind::Product:
      out += n.kind == NodeKind::Sum ? "add" : "mul";
      for (NodeId c : n.children) {
        out += " t" + std::to_string(c);
      }
      break;
    }
    out += '\n';
  }
  for (NodeId r : d.roots()) {
    out += "return t" + std::to_string(r) + '\n';
  }
  return out;
}

} // namespace hornmcts
