#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hornmcts/mcts.hpp"

namespace hornmcts {

/// A C_p sensitivity experiment: `samples` independent single searches with
/// cp drawn log-uniformly from [cp_min, cp_max].
struct SweepConfig {
  double cp_min = 0.01;
  double cp_max = 10.0;
  std::uint32_t samples = 4000;
  std::uint64_t n_updates = 1000;
  Criterion criterion = Criterion::SaUct;
  Direction direction = Direction::Forward;
  Schedule schedule;
  std::uint64_t base_seed = 0;
};

void validate(const SweepConfig &cfg);

struct SweepRow {
  std::uint32_t sample = 0;
  double cp = 0.0;
  Criterion criterion = Criterion::SaUct;
  std::uint64_t n_updates = 0;
  Direction direction = Direction::Forward;
  std::uint64_t seed = 0;
  OpCount ops;
  std::string scheme; // "v1,v2,...;direction"

  bool operator==(const SweepRow &) const = default;
};

inline constexpr std::string_view kSweepCsvHeader =
    "sample,cp,criterion,n_updates,direction,seed,ops_total,ops_mul,ops_add,scheme";

/// The cp of every sample, from a generator seeded with base_seed ^ a fixed
/// salt (so it never coincides with a search stream). Values are rounded to
/// six significant digits so the CSV text is the exact value searched with.
std::vector<double> sample_cps(const SweepConfig &cfg);

/// Sample k runs search() with seed base_seed + k and R = 1. Samples run
/// concurrently under OpenMP; rows come back in sample order.
std::vector<SweepRow> run_sweep(const Expression &e, const SweepConfig &cfg);
std::vector<SweepRow> run_sweep_serial(const Expression &e, const SweepConfig &cfg);

/// Shortest round-trip decimal, independent of the C locale.
std::string format_double(double v);

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);
std::vector<SweepRow> read_sweep_csv(std::istream &in);

struct SweepPoint {
  double cp = 0.0;
  std::uint64_t ops_total = 0;
};

std::vector<SweepPoint> to_points(const std::vector<SweepRow> &rows);

/// Minimum ops_total per equal-width bin of log10(cp) over [lo, hi];
/// nullopt for empty bins.
std::vector<std::optional<std::uint64_t>> per_bin_minima(const std::vector<SweepPoint> &points,
                                                         std::size_t bins, double lo, double hi);

struct Roi {
  double width = 0.0; // in decades of cp
  double cp_low = 0.0;
  double cp_high = 0.0;
  std::uint64_t global_min = 0;
};

/// Region of interest: bins of log10(cp) over the sampled range whose minimum
/// is within (1 + epsilon) of the global minimum; the longest contiguous run
/// of such bins is the region and its log-width is returned.
Roi region_of_interest(const std::vector<SweepPoint> &points, double epsilon = 0.05,
                       std::size_t bins = 50);
double roi_width(const std::vector<SweepPoint> &points, double epsilon = 0.05, std::size_t bins = 50);

struct BruteForceResult {
  OpCount best;
  Scheme scheme;
  std::uint64_t schemes_evaluated = 0;
};

inline constexpr std::size_t kBruteForceMaxVars = 8;

/// Minimum delta over every full permutation; ties go to the lexicographically
/// first scheme (variables compared by atom id). Threads split the space by
/// leading variable.
BruteForceResult brute_force(const Expression &e, Direction direction);
BruteForceResult brute_force_serial(const Expression &e, Direction direction);

} // namespace hornmcts
