#include "hornmcts/mcts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace hornmcts {

std::string_view to_string(Criterion c) { return c == Criterion::Uct ? "uct" : "sa-uct"; }

Criterion parse_criterion(std::string_view text) {
  if (text == "uct") {
    return Criterion::Uct;
  }
  if (text == "sa-uct") {
    return Criterion::SaUct;
  }
  throw SearchError("unknown criterion '" + std::string(text) + "'");
}

std::string to_string(const Schedule &s) {
  switch (s.kind) {
  case Schedule::Kind::Linear:
    return "linear";
  case Schedule::Kind::Constant:
    return "const";
  case Schedule::Kind::Exponential: {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, s.half_life);
    return "exp:" + std::string(buf, end);
  }
  }
  return "linear";
}

Schedule parse_schedule(std::string_view text) {
  if (text == "linear") {
    return {Schedule::Kind::Linear, 0.0};
  }
  if (text == "const") {
    return {Schedule::Kind::Constant, 0.0};
  }
  if (text.starts_with("exp:")) {
    const auto num = text.substr(4);
    double h = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), h);
    if (ec != std::errc() || ptr != num.data() + num.size() || !(h > 0.0) || !std::isfinite(h)) {
      throw SearchError("bad exponential half-life in '" + std::string(text) + "'");
    }
    return {Schedule::Kind::Exponential, h};
  }
  throw SearchError("unknown schedule '" + std::string(text) + "'");
}

void validate(const SearchParams &p) {
  if (!(p.cp >= 0.0) || !std::isfinite(p.cp)) {
    throw SearchError("cp must be a finite nonnegative number");
  }
  if (p.n_updates == 0) {
    throw SearchError("n_updates must be at least 1");
  }
  if (p.repeats == 0) {
    throw SearchError("repeats must be at least 1");
  }
  if (p.schedule.kind == Schedule::Kind::Exponential && !(p.schedule.half_life > 0.0)) {
    throw SearchError("exponential half-life must be positive");
  }
}

double temperature(std::uint64_t i, const SearchParams &p) {
  if (p.criterion == Criterion::Uct) {
    return p.cp;
  }
  switch (p.schedule.kind) {
  case Schedule::Kind::Linear: {
    const double n = static_cast<double>(p.n_updates);
    const double remaining = i >= p.n_updates ? 0.0 : static_cast<double>(p.n_updates - i);
    return p.cp * (remaining / n);
  }
  case Schedule::Kind::Exponential:
    return p.cp * std::exp2(-static_cast<double>(i) / p.schedule.half_life);
  case Schedule::Kind::Constant:
    return p.cp;
  }
  return p.cp;
}

double node_score(const TreeNode &node, double naive_total) {
  if (node.visits == 0) {
    throw SearchError("score requested for an unvisited node");
  }
  const double mean = static_cast<double>(node.delta_sum) / static_cast<double>(node.visits);
  return naive_total / std::max(mean, 1.0);
}

double uct_value(double score, std::uint64_t parent_visits, std::uint64_t child_visits, double t) {
  const double explore =
      std::sqrt(2.0 * std::log(static_cast<double>(parent_visits)) / static_cast<double>(child_visits));
  return score + 2.0 * t * explore;
}

std::uint32_t best_child(const std::vector<TreeNode> &nodes, const TreeNode &parent, double t,
                         double naive_total, SplitMix64 &rng) {
  if (parent.children.empty()) {
    throw SearchError("best_child on a node without expanded children");
  }
  double best = -INFINITY;
  std::vector<std::uint32_t> ties;
  for (auto idx : parent.children) {
    const auto &c = nodes[idx];
    const double v = uct_value(node_score(c, naive_total), parent.visits, c.visits, t);
    if (v > best) {
      best = v;
      ties.assign(1, idx);
    } else if (v == best) {
      ties.push_back(idx);
    }
  }
  if (ties.size() == 1) {
    return ties.front();
  }
  return ties[rng.below(ties.size())];
}

Search::Search(const Expression &e, const SearchParams &params)
    : expr_(e), params_(params), vars_(hornmcts::variables(e)), rng_(params.seed) {
  validate(params_);
  if (vars_.empty()) {
    throw SearchError("expression has no variables to order");
  }
  naive_total_ = static_cast<double>(naive_op_count(e).total());
  TreeNode root;
  root.untried.resize(vars_.size());
  for (std::uint32_t v = 0; v < vars_.size(); ++v) {
    root.untried[v] = v;
  }
  nodes_.push_back(std::move(root));
  if (params_.record_trace) {
    trace_.reserve(params_.n_updates);
  }
}

OpCount Search::score(const std::vector<AtomId> &path) {
  std::string key(reinterpret_cast<const char *>(path.data()), path.size() * sizeof(AtomId));
  if (auto it = cache_.find(key); it != cache_.end()) {
    return it->second;
  }
  std::vector<AtomId> order = path;
  if (params_.direction == Direction::Backward) {
    std::reverse(order.begin(), order.end());
  }
  const OpCount ops = score_order(expr_, order);
  cache_.emplace(std::move(key), ops);
  return ops;
}

IterationRecord Search::run_iteration(std::uint64_t i) {
  const double t = temperature(i, params_);
  const auto depth_limit = static_cast<std::uint32_t>(vars_.size());

  // (a) selection
  std::vector<std::uint32_t> tree_path{0};
  std::uint32_t cur = 0;
  while (nodes_[cur].untried.empty() && nodes_[cur].depth < depth_limit) {
    cur = best_child(nodes_, nodes_[cur], t, naive_total_, rng_);
    tree_path.push_back(cur);
  }

  // (b) expansion
  if (!nodes_[cur].untried.empty()) {
    auto &untried = nodes_[cur].untried;
    const auto pick = rng_.below(untried.size());
    TreeNode child;
    child.variable = untried[pick];
    child.depth = nodes_[cur].depth + 1;
    untried.erase(untried.begin() + static_cast<std::ptrdiff_t>(pick));
    const auto idx = static_cast<std::uint32_t>(nodes_.size());
    nodes_[cur].children.push_back(idx);
    nodes_.push_back(std::move(child));
    tree_path.push_back(idx);
  }

  // the new child's untried set is every variable not on its path
  std::vector<bool> used(vars_.size(), false);
  std::vector<AtomId> path;
  path.reserve(vars_.size());
  for (auto n : tree_path) {
    if (nodes_[n].variable != TreeNode::kRoot) {
      used[nodes_[n].variable] = true;
      path.push_back(vars_[nodes_[n].variable]);
    }
  }
  std::vector<std::uint32_t> rest;
  for (std::uint32_t v = 0; v < vars_.size(); ++v) {
    if (!used[v]) {
      rest.push_back(v);
    }
  }
  auto &leaf = nodes_[tree_path.back()];
  if (leaf.visits == 0 && leaf.children.empty() && leaf.untried.empty()) {
    leaf.untried = rest;
  }

  // (c) random playout over the unused variables
  for (std::size_t k = rest.size(); k > 1; --k) {
    const auto j = rng_.below(k);
    std::swap(rest[k - 1], rest[j]);
  }
  for (auto v : rest) {
    path.push_back(vars_[v]);
  }
  const OpCount ops = score(path);
  const std::uint64_t delta = ops.total();

  // (d) backpropagation
  for (auto n : tree_path) {
    nodes_[n].visits += 1;
    nodes_[n].delta_sum += delta;
  }
  if (!have_best_ || delta < best_.total()) {
    have_best_ = true;
    best_ = ops;
    best_path_ = path;
  }
  if (params_.record_trace) {
    trace_.push_back(delta);
  }
  ++iterations_;
  return {delta, std::move(path), static_cast<std::uint32_t>(tree_path.size() - 1)};
}

SearchResult Search::run() {
  while (iterations_ < params_.n_updates) {
    run_iteration(iterations_);
  }
  return result();
}

SearchResult Search::result() const {
  SearchResult r;
  r.best_delta = best_;
  r.best_scheme = Scheme{best_path_, params_.direction};
  r.deltas_per_iteration = trace_;
  r.iterations_run = iterations_;
  r.seed = params_.seed;
  return r;
}

SearchResult search(const Expression &e, const SearchParams &params) {
  return Search(e, params).run();
}

namespace {

SearchResult pick_best(std::vector<SearchResult> &runs) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].best_delta.total() < runs[best].best_delta.total()) {
      best = r;
    }
  }
  return std::move(runs[best]);
}

} // namespace

SearchResult repeat_search_serial(const Expression &e, const SearchParams &params) {
  validate(params);
  std::vector<SearchResult> runs(params.repeats);
  for (std::uint32_t r = 0; r < params.repeats; ++r) {
    SearchParams p = params;
    p.seed = params.seed + r;
    runs[r] = search(e, p);
  }
  return pick_best(runs);
}

SearchResult repeat_search(const Expression &e, const SearchParams &params) {
  validate(params);
  if (variables(e).empty()) {
    throw SearchError("expression has no variables to order");
  }
  std::vector<SearchResult> runs(params.repeats);
  const auto n = static_cast<std::int64_t>(params.repeats);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < n; ++r) {
    SearchParams p = params;
    p.seed = params.seed + static_cast<std::uint64_t>(r);
    runs[static_cast<std::size_t>(r)] = search(e, p);
  }
  return pick_best(runs);
}

} // namespace hornmcts
