#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hornmcts/cse.hpp"
#include "hornmcts/expr.hpp"
#include "hornmcts/horner.hpp"
#include "hornmcts/rng.hpp"

namespace hornmcts {

class SearchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// UCT keeps the exploration constant fixed at cp; SA-UCT replaces it with a
/// temperature that follows the schedule, starting at cp.
enum class Criterion { Uct, SaUct };

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view text);

struct Schedule {
  enum class Kind { Linear, Exponential, Constant };
  Kind kind = Kind::Linear;
  double half_life = 0.0; // iterations, Exponential only

  bool operator==(const Schedule &) const = default;
};

/// "linear", "const", or "exp:<half-life>".
std::string to_string(const Schedule &s);
Schedule parse_schedule(std::string_view text);

struct SearchParams {
  double cp = 1.0;
  std::uint64_t n_updates = 1000;
  std::uint32_t repeats = 1;
  Criterion criterion = Criterion::SaUct;
  Schedule schedule;
  Direction direction = Direction::Forward;
  std::uint64_t seed = 0;
  /// Keep the per-iteration delta list in the result.
  bool record_trace = true;
};

/// Throws SearchError on cp < 0 (or non-finite), n_updates == 0, repeats == 0,
/// or a non-positive half-life.
void validate(const SearchParams &p);

/// Exploration weight at iteration i (0-based). UCT ignores the schedule.
///   Linear:      cp * (N - i) / N
///   Exponential: cp * 2^(-i / half_life)
///   Constant:    cp
double temperature(std::uint64_t i, const SearchParams &p);

struct TreeNode {
  static constexpr std::uint32_t kRoot = UINT32_MAX;

  std::uint32_t variable = kRoot; // index into the search's variable list
  std::uint32_t depth = 0;
  std::uint64_t visits = 0;
  std::uint64_t delta_sum = 0;
  std::vector<std::uint32_t> children; // node indices
  std::vector<std::uint32_t> untried;  // variable indices not yet expanded here
};

/// naive_total / (delta_sum / visits): ratio of the unoptimized count to the
/// mean playout count through the node. Higher is better. A mean below one
/// (only possible when every scheme costs zero) is clamped to one.
double node_score(const TreeNode &node, double naive_total);

/// score + 2 t sqrt(2 ln(parent_visits) / child_visits)
double uct_value(double score, std::uint64_t parent_visits, std::uint64_t child_visits, double t);

/// Index (into `nodes`) of the expanded child of `parent` maximizing
/// uct_value; exact ties are broken uniformly with `rng`.
std::uint32_t best_child(const std::vector<TreeNode> &nodes, const TreeNode &parent, double t,
                         double naive_total, SplitMix64 &rng);

struct IterationRecord {
  std::uint64_t delta = 0;
  std::vector<AtomId> path; // complete playout order, before direction
  std::uint32_t tree_depth = 0;
};

struct SearchResult {
  OpCount best_delta;
  Scheme best_scheme;
  std::vector<std::uint64_t> deltas_per_iteration;
  std::uint64_t iterations_run = 0;
  std::uint64_t seed = 0;

  bool operator==(const SearchResult &) const = default;
};

/// One MCTS over variable orderings. Strictly sequential; the generator is
/// seeded from params.seed.
class Search {
public:
  Search(const Expression &e, const SearchParams &params);

  /// Selection, expansion, random playout, backpropagation for iteration i.
  IterationRecord run_iteration(std::uint64_t i);
  /// Runs the remaining iterations up to n_updates.
  SearchResult run();

  SearchResult result() const;
  const std::vector<TreeNode> &nodes() const { return nodes_; }
  const TreeNode &root() const { return nodes_.front(); }
  std::span<const AtomId> variables() const { return vars_; }
  double naive_total() const { return naive_total_; }
  std::uint64_t iterations_run() const { return iterations_; }

private:
  OpCount score(const std::vector<AtomId> &path);

  const Expression &expr_;
  SearchParams params_;
  std::vector<AtomId> vars_;
  double naive_total_ = 0.0;
  SplitMix64 rng_;
  std::vector<TreeNode> nodes_;
  std::uint64_t iterations_ = 0;
  bool have_best_ = false;
  OpCount best_;
  std::vector<AtomId> best_path_;
  std::vector<std::uint64_t> trace_;
  // Delta is a pure function of the full path; repeated paths are common late
  // in a search.
  std::unordered_map<std::string, OpCount> cache_;
};

SearchResult search(const Expression &e, const SearchParams &params);

/// Runs params.repeats searches with seeds seed, seed+1, ... and keeps the
/// lowest total (ties: lowest seed). Searches run concurrently under OpenMP.
SearchResult repeat_search(const Expression &e, const SearchParams &params);
/// Single-threaded reference for repeat_search.
SearchResult repeat_search_serial(const Expression &e, const SearchParams &params);

} // namespace hornmcts
