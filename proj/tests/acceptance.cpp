// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N,...] [--known-red N,...]
//
// Exit status is nonzero if any criterion fails, except those listed with
// --known-red. Their FAIL line is still printed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hornmcts/benchgen.hpp"
#include "hornmcts/cse.hpp"
#include "hornmcts/mcts.hpp"
#include "hornmcts/sweep.hpp"
#include "support.hpp"

using namespace hornmcts;
using hornmcts::testing::kPrime;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome worked_example() {
  const auto t0 = Clock::now();
  const auto e = parse("x^3*y^2 + x^2*y + x^3*z");
  const auto x = *e.atoms().find("x");
  const auto y = *e.atoms().find("y");
  const auto xy = tree_op_count(apply_scheme(e, {{x, y}, Direction::Forward}));
  const auto yx = tree_op_count(apply_scheme(e, {{y, x}, Direction::Forward}));
  const auto naive = naive_op_count(e);
  const double ms = seconds_since(t0) * 1e3;
  const bool ok = xy == OpCount{4, 2} && yx == OpCount{7, 2} && naive == OpCount{9, 2} && ms < 1.0;
  return {ok, fmt("[x,y] %llu mul + %llu add, [y,x] %llu + %llu, naive %llu + %llu (%.3f ms, limit 1 ms)",
                  (unsigned long long)xy.mul, (unsigned long long)xy.add, (unsigned long long)yx.mul,
                  (unsigned long long)yx.add, (unsigned long long)naive.mul, (unsigned long long)naive.add, ms)};
}

Outcome addition_invariance() {
  SplitMix64 rng(2024);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto e = hornmcts::testing::random_small_expr(rng);
    const auto s = hornmcts::testing::random_scheme(e, rng);
    if (tree_op_count(apply_scheme(e, s)).add != naive_op_count(e).add) {
      ++bad;
    }
  }
  return {bad == 0, fmt("%d of 1000 triples change the add count", bad)};
}

Outcome semantic_preservation() {
  const auto t0 = Clock::now();
  SplitMix64 rng(77);
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    const auto e = hornmcts::testing::random_small_expr(rng);
    const auto s = hornmcts::testing::random_scheme(e, rng);
    const auto r = simplify(e, s);
    for (int k = 0; k < 20; ++k) {
      const auto a = hornmcts::testing::random_point(e, rng);
      if (eval_dag_mod_p(r.dag, a, kPrime) != eval_mod_p(e, a, kPrime)) {
        ++bad;
      }
    }
  }
  const double s = seconds_since(t0);
  return {bad == 0 && s < 30.0, fmt("%d of 10000 evaluations differ (%.2f s, limit 30 s)", bad, s)};
}

Outcome horner_exposes_cse() {
  const auto e = parse("sin(x) + cos(x) + sin(x)*x + cos(x)*x");
  const auto x = *e.atoms().find("x");
  const auto with = simplify(e, {{x}, Direction::Forward}).ops.total();
  const auto without = simplify(e, {}).ops.total();
  return {with == 3 && with < without,
          fmt("scheme [x] %llu, empty scheme %llu", (unsigned long long)with, (unsigned long long)without)};
}

Outcome constant_schedule_is_uct() {
  RandomExprParams rp;
  rp.n_vars = 5;
  rp.seed = 5;
  const auto e = random_expr(rp);
  int bad = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SearchParams uct;
    uct.cp = 0.8;
    uct.n_updates = 300;
    uct.criterion = Criterion::Uct;
    uct.seed = seed;
    SearchParams sa = uct;
    sa.criterion = Criterion::SaUct;
    sa.schedule = {Schedule::Kind::Constant, 0.0};
    Search a(e, uct);
    Search b(e, sa);
    bool same = true;
    for (std::uint64_t i = 0; i < uct.n_updates; ++i) {
      const auto ra = a.run_iteration(i);
      const auto rb = b.run_iteration(i);
      same = same && ra.delta == rb.delta && ra.path == rb.path && ra.tree_depth == rb.tree_depth;
    }
    same = same && a.result() == b.result();
    bad += same ? 0 : 1;
  }
  return {bad == 0, fmt("%d of 50 seeds diverge (5 variables, N=300)", bad)};
}

Outcome temperature_schedule() {
  SearchParams p;
  p.cp = 1.7;
  p.n_updates = 1000;
  p.criterion = Criterion::SaUct;
  const double t0 = temperature(0, p);
  const double tn = temperature(1000, p);
  const double t250 = temperature(250, p);
  const double rel = std::abs(t250 - 0.75 * p.cp) / (0.75 * p.cp);
  return {t0 == p.cp && tn == 0.0 && rel <= 1e-12,
          fmt("T(0)=%.17g T(N)=%.17g T(250)/(0.75 cp)-1=%.3g (tol 1e-12)", t0, tn, rel)};
}

Outcome oracle_optimality() {
  const auto t0 = Clock::now();
  int hits = 0;
  std::string misses;
  for (std::uint64_t k = 0; k < 10; ++k) {
    RandomExprParams rp;
    rp.n_vars = 5;
    rp.seed = 1000 + k;
    const auto e = random_expr(rp);
    const auto bf = brute_force(e, Direction::Forward);
    SearchParams p;
    p.cp = 1.0;
    p.n_updates = 500;
    p.repeats = 10;
    p.criterion = Criterion::SaUct;
    p.seed = k * 100;
    p.record_trace = false;
    const auto r = repeat_search(e, p);
    if (bf.schemes_evaluated == 120 && r.best_delta.total() == bf.best.total()) {
      ++hits;
    } else {
      misses += fmt(" [seed %llu: %llu vs %llu]", (unsigned long long)rp.seed,
                    (unsigned long long)r.best_delta.total(), (unsigned long long)bf.best.total());
    }
  }
  const double s = seconds_since(t0);
  return {hits >= 9 && s < 60.0, fmt("%d of 10 reach the 120-scheme minimum (%.2f s, limit 60 s)", hits, s) + misses};
}

SweepConfig roi_config(Criterion c, Direction d) {
  SweepConfig cfg;
  cfg.cp_min = 0.01;
  cfg.cp_max = 10.0;
  cfg.samples = 400;
  cfg.n_updates = 1000;
  cfg.criterion = c;
  cfg.direction = d;
  return cfg;
}

/// res(4,3) sweeps shared by the ROI and direction criteria.
struct Res43Sweeps {
  std::vector<SweepPoint> sa_forward;
  std::vector<SweepPoint> uct_forward;
  std::vector<SweepPoint> sa_backward;
};

const Res43Sweeps &res43_sweeps(bool need_uct, bool need_backward) {
  static Res43Sweeps s;
  static bool have_uct = false;
  static bool have_backward = false;
  const auto e = resultant_expr(4, 3);
  if (s.sa_forward.empty()) {
    s.sa_forward = to_points(run_sweep(e, roi_config(Criterion::SaUct, Direction::Forward)));
  }
  if (need_uct && !have_uct) {
    s.uct_forward = to_points(run_sweep(e, roi_config(Criterion::Uct, Direction::Forward)));
    have_uct = true;
  }
  if (need_backward && !have_backward) {
    s.sa_backward = to_points(run_sweep(e, roi_config(Criterion::SaUct, Direction::Backward)));
    have_backward = true;
  }
  return s;
}

Outcome roi_widening() {
  const auto &s = res43_sweeps(true, false);
  const auto sa = region_of_interest(s.sa_forward, 0.05);
  const auto uct = region_of_interest(s.uct_forward, 0.05);
  const double ratio = uct.width > 0.0 ? sa.width / uct.width : INFINITY;
  return {ratio >= 2.0, fmt("roi width SA-UCT %.4f, UCT %.4f decades, ratio %.3f (need >= 2); global min %llu / %llu",
                            sa.width, uct.width, ratio, (unsigned long long)sa.global_min,
                            (unsigned long long)uct.global_min)};
}

Outcome resultants() {
  bool ok = resultant_expr(1, 1) == parse("a_1*b_0 - a_0*b_1");
  ok = ok && resultant_expr(2, 1) == parse("a_2*b_0^2 - a_1*b_0*b_1 + a_0*b_1^2");
  bool counts = true;
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t n = 1; n <= 4; ++n) {
      counts = counts && variables(resultant_expr(m, n)).size() == m + n + 2;
    }
  }
  const auto r75 = variables(resultant_expr(7, 5)).size();
  SplitMix64 rng(8);
  int vanish = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng.below(4);
    const std::size_t n = 1 + rng.below(4);
    const auto res = resultant_expr(m, n);
    const Residue root = rng.below(kPrime);
    const auto f = hornmcts::testing::with_root(m, root, rng);
    const auto h = hornmcts::testing::with_root(n, root, rng);
    if (eval_mod_p(res, hornmcts::testing::coefficients(res, m, n, f, h), kPrime) == 0) {
      ++vanish;
    }
  }
  return {ok && counts && r75 == 14 && vanish == 20,
          fmt("closed forms %s, m+n+2 variables %s, res(7,5) has %zu, common root vanishes %d/20",
              ok ? "match" : "DIFFER", counts ? "hold" : "FAIL", r75, vanish)};
}

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h = (h ^ c) * 0x100000001b3ULL;
  }
  return h;
}

Outcome determinism() {
  const auto e = resultant_expr(3, 2);
  SweepConfig cfg;
  cfg.samples = 60;
  cfg.n_updates = 200;
  cfg.base_seed = 11;
  std::ostringstream a;
  std::ostringstream b;
  std::ostringstream c;
  write_sweep_csv(a, run_sweep(e, cfg));
  write_sweep_csv(b, run_sweep(e, cfg));
  write_sweep_csv(c, run_sweep_serial(e, cfg));
  // pinned so a different platform or toolchain producing other bytes shows up
  constexpr std::uint64_t kGolden = 0x03c86c95eba526c7ULL;
  const auto h = fnv1a(a.str());
  const bool ok = a.str() == b.str() && a.str() == c.str() && h == kGolden;
  return {ok, fmt("two runs %s, serial %s, fnv1a 0x%016llx (pinned 0x%016llx)", a.str() == b.str() ? "equal" : "DIFFER",
                  a.str() == c.str() ? "equal" : "DIFFERS", (unsigned long long)h, (unsigned long long)kGolden)};
}

std::string minima_text(const std::vector<std::optional<std::uint64_t>> &m) {
  std::string out;
  for (const auto &v : m) {
    out += (out.empty() ? "" : " ") + (v ? std::to_string(*v) : std::string("-"));
  }
  return out;
}

Outcome direction_divergence() {
  const auto &s = res43_sweeps(false, true);
  // same log(cp) binning as the region-of-interest metric
  constexpr std::size_t kBins = 50;
  const auto fw = per_bin_minima(s.sa_forward, kBins, 0.01, 10.0);
  const auto bw = per_bin_minima(s.sa_backward, kBins, 0.01, 10.0);
  std::size_t differ = 0;
  for (std::size_t b = 0; b < kBins; ++b) {
    differ += fw[b] != bw[b] ? 1 : 0;
  }
  return {differ > 0, fmt("%zu of %zu bins differ; per-bin minima forward [", differ, kBins) + minima_text(fw) +
                          "] backward [" + minima_text(bw) + "]"};
}

std::set<int> parse_list(const std::string &text) {
  std::set<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) {
      out.insert(std::stoi(item));
    }
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"acceptance criteria"};
  std::string only;
  std::string known_red;
  app.add_option("--only", only, "comma-separated criteria to run");
  app.add_option("--known-red", known_red, "comma-separated criteria whose failure does not fail the run");
  CLI11_PARSE(app, argc, argv);
  const auto selected = parse_list(only);
  const auto red = parse_list(known_red);

  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"worked example exactness", worked_example},
      {"addition invariance", addition_invariance},
      {"semantic preservation", semantic_preservation},
      {"Horner exposes CSE", horner_exposes_cse},
      {"SA-UCT with constant schedule equals UCT", constant_schedule_is_uct},
      {"temperature schedule", temperature_schedule},
      {"oracle optimality on 5 variables", oracle_optimality},
      {"ROI widening on res(4,3)", roi_widening},
      {"resultant correctness", resultants},
      {"sweep determinism", determinism},
      {"forward/backward divergence on res(4,3)", direction_divergence},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.contains(id)) {
      continue;
    }
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const bool tolerated = !o.pass && red.contains(id);
    std::printf("%s %2d %s: %s [%.1f s]%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(),
                seconds_since(t0), tolerated ? " (known red)" : "");
    std::fflush(stdout);
    if (!o.pass && !tolerated) {
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
