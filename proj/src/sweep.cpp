#include "hornmcts/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace hornmcts {

void validate(const SweepConfig &cfg) {
  if (!(cfg.cp_min > 0.0) || !(cfg.cp_min < cfg.cp_max) || !std::isfinite(cfg.cp_max)) {
    throw SearchError("sweep needs 0 < cp_min < cp_max");
  }
  if (cfg.samples == 0) {
    throw SearchError("sweep needs at least one sample");
  }
  if (cfg.n_updates == 0) {
    throw SearchError("n_updates must be at least 1");
  }
}

namespace {

constexpr std::uint64_t kCpStreamSalt = 0x5A17C0FFEE15C0DEULL;

double round_sig6(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  double out = v;
  std::from_chars(buf, end, out);
  return out;
}

SearchParams params_for(const SweepConfig &cfg, std::uint32_t k, double cp) {
  SearchParams p;
  p.cp = cp;
  p.n_updates = cfg.n_updates;
  p.repeats = 1;
  p.criterion = cfg.criterion;
  p.schedule = cfg.schedule;
  p.direction = cfg.direction;
  p.seed = cfg.base_seed + k;
  p.record_trace = false;
  return p;
}

SweepRow make_row(const Expression &e, const SweepConfig &cfg, std::uint32_t k, double cp) {
  const auto result = search(e, params_for(cfg, k, cp));
  return {k,
          cp,
          cfg.criterion,
          cfg.n_updates,
          cfg.direction,
          cfg.base_seed + k,
          result.best_delta,
          format_scheme(result.best_scheme, e.atoms())};
}

} // namespace

std::vector<double> sample_cps(const SweepConfig &cfg) {
  validate(cfg);
  SplitMix64 rng(cfg.base_seed ^ kCpStreamSalt);
  const double lo = std::log(cfg.cp_min);
  const double hi = std::log(cfg.cp_max);
  std::vector<double> cps(cfg.samples);
  for (auto &cp : cps) {
    cp = round_sig6(std::exp(lo + rng.uniform01() * (hi - lo)));
  }
  return cps;
}

std::vector<SweepRow> run_sweep_serial(const Expression &e, const SweepConfig &cfg) {
  const auto cps = sample_cps(cfg);
  std::vector<SweepRow> rows;
  rows.reserve(cps.size());
  for (std::uint32_t k = 0; k < cps.size(); ++k) {
    rows.push_back(make_row(e, cfg, k, cps[k]));
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const Expression &e, const SweepConfig &cfg) {
  const auto cps = sample_cps(cfg);
  if (variables(e).empty()) {
    throw SearchError("expression has no variables to order");
  }
  std::vector<SweepRow> rows(cps.size());
  const auto n = static_cast<std::int64_t>(cps.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto idx = static_cast<std::uint32_t>(k);
    rows[idx] = make_row(e, cfg, idx, cps[idx]);
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto &r : rows) {
    out << r.sample << ',' << format_double(r.cp) << ',' << to_string(r.criterion) << ','
        << r.n_updates << ',' << to_string(r.direction) << ',' << r.seed << ',' << r.ops.total()
        << ',' << r.ops.mul << ',' << r.ops.add << ",\"";
    for (char c : r.scheme) {
      if (c == '"') {
        out << '"';
      }
      out << c;
    }
    out << "\"\n";
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

template <class T> T parse_number(const std::string &s, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("sweep CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

} // namespace

std::vector<SweepRow> read_sweep_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("sweep CSV is empty");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kSweepCsvHeader) {
    throw std::runtime_error("sweep CSV header mismatch");
  }
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 10) {
      throw std::runtime_error("sweep CSV line " + std::to_string(lineno) + ": expected 10 fields");
    }
    SweepRow r;
    r.sample = parse_number<std::uint32_t>(f[0], lineno);
    r.cp = parse_number<double>(f[1], lineno);
    r.criterion = parse_criterion(f[2]);
    r.n_updates = parse_number<std::uint64_t>(f[3], lineno);
    r.direction = parse_direction(f[4]);
    r.seed = parse_number<std::uint64_t>(f[5], lineno);
    const auto total = parse_number<std::uint64_t>(f[6], lineno);
    r.ops.mul = parse_number<std::uint64_t>(f[7], lineno);
    r.ops.add = parse_number<std::uint64_t>(f[8], lineno);
    if (r.ops.total() != total) {
      throw std::runtime_error("sweep CSV line " + std::to_string(lineno) + ": ops_total != mul + add");
    }
    r.scheme = f[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepPoint> to_points(const std::vector<SweepRow> &rows) {
  std::vector<SweepPoint> pts;
  pts.reserve(rows.size());
  for (const auto &r : rows) {
    pts.push_back({r.cp, r.ops.total()});
  }
  return pts;
}

std::vector<std::optional<std::uint64_t>> per_bin_minima(const std::vector<SweepPoint> &points,
                                                         std::size_t bins, double lo, double hi) {
  std::vector<std::optional<std::uint64_t>> mins(bins);
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  const double width = (lhi - llo) / static_cast<double>(bins);
  for (const auto &p : points) {
    std::size_t b = 0;
    if (width > 0.0) {
      const double pos = std::floor((std::log10(p.cp) - llo) / width);
      b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    }
    if (!mins[b] || p.ops_total < *mins[b]) {
      mins[b] = p.ops_total;
    }
  }
  return mins;
}

Roi region_of_interest(const std::vector<SweepPoint> &points, double epsilon, std::size_t bins) {
  Roi roi;
  if (points.empty() || bins == 0) {
    return roi;
  }
  auto [lo_it, hi_it] = std::minmax_element(points.begin(), points.end(),
                                            [](const SweepPoint &a, const SweepPoint &b) { return a.cp < b.cp; });
  const double lo = lo_it->cp;
  const double hi = hi_it->cp;
  roi.global_min = std::min_element(points.begin(), points.end(), [](const SweepPoint &a, const SweepPoint &b) {
                     return a.ops_total < b.ops_total;
                   })->ops_total;
  const double threshold = (1.0 + epsilon) * static_cast<double>(roi.global_min);
  const auto mins = per_bin_minima(points, bins, lo, hi);
  const double bin_width = (std::log10(hi) - std::log10(lo)) / static_cast<double>(bins);

  std::size_t best_start = 0;
  std::size_t best_len = 0;
  std::size_t run_start = 0;
  std::size_t run_len = 0;
  for (std::size_t b = 0; b < bins; ++b) {
    if (mins[b] && static_cast<double>(*mins[b]) <= threshold) {
      if (run_len == 0) {
        run_start = b;
      }
      ++run_len;
      if (run_len > best_len) {
        best_len = run_len;
        best_start = run_start;
      }
    } else {
      run_len = 0;
    }
  }
  roi.width = static_cast<double>(best_len) * bin_width;
  roi.cp_low = std::pow(10.0, std::log10(lo) + static_cast<double>(best_start) * bin_width);
  roi.cp_high = std::pow(10.0, std::log10(lo) + static_cast<double>(best_start + best_len) * bin_width);
  return roi;
}

double roi_width(const std::vector<SweepPoint> &points, double epsilon, std::size_t bins) {
  return region_of_interest(points, epsilon, bins).width;
}

namespace {

std::vector<AtomId> checked_variables(const Expression &e) {
  auto vars = variables(e);
  if (vars.empty()) {
    throw SearchError("expression has no variables to order");
  }
  if (vars.size() > kBruteForceMaxVars) {
    throw SearchError("brute force is limited to " + std::to_string(kBruteForceMaxVars) + " variables");
  }
  return vars;
}

/// Enumerates permutations whose leading variable is vars[first], in
/// lexicographic order.
BruteForceResult enumerate_block(const Expression &e, const std::vector<AtomId> &vars, std::size_t first,
                                 Direction direction) {
  std::vector<AtomId> tail;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i != first) {
      tail.push_back(vars[i]);
    }
  }
  BruteForceResult best;
  bool have = false;
  std::vector<AtomId> order;
  do {
    order.assign(1, vars[first]);
    order.insert(order.end(), tail.begin(), tail.end());
    Scheme s{order, direction};
    const auto ops = score_order(e, effective_order(s));
    ++best.schemes_evaluated;
    if (!have || ops.total() < best.best.total()) {
      have = true;
      best.best = ops;
      best.scheme = std::move(s);
    }
  } while (std::next_permutation(tail.begin(), tail.end()));
  return best;
}

BruteForceResult merge_blocks(std::vector<BruteForceResult> &blocks) {
  BruteForceResult out = blocks.front();
  std::uint64_t evaluated = 0;
  for (const auto &b : blocks) {
    evaluated += b.schemes_evaluated;
    if (b.best.total() < out.best.total()) {
      out = b;
    }
  }
  out.schemes_evaluated = evaluated;
  return out;
}

} // namespace

BruteForceResult brute_force_serial(const Expression &e, Direction direction) {
  const auto vars = checked_variables(e);
  std::vector<BruteForceResult> blocks;
  for (std::size_t f = 0; f < vars.size(); ++f) {
    blocks.push_back(enumerate_block(e, vars, f, direction));
  }
  return merge_blocks(blocks);
}

BruteForceResult brute_force(const Expression &e, Direction direction) {
  const auto vars = checked_variables(e);
  std::vector<BruteForceResult> blocks(vars.size());
  const auto n = static_cast<std::int64_t>(vars.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t f = 0; f < n; ++f) {
    blocks[static_cast<std::size_t>(f)] = enumerate_block(e, vars, static_cast<std::size_t>(f), direction);
  }
  return merge_blocks(blocks);
}

} // namespace hornmcts
