// Serial reference vs OpenMP kernel: wall time and agreement.
//
//   bench_parallel [--samples N] [--n-updates N] [--repeats R]

#include <chrono>
#include <cstdio>
#include <functional>

#include <CLI11.hpp>
#include <omp.h>

#include "hornmcts/benchgen.hpp"
#include "hornmcts/sweep.hpp"

using namespace hornmcts;

namespace {

template <class F> double time_it(F &&f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char *name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", name, serial, parallel,
              parallel > 0.0 ? serial / parallel : 0.0, same ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"serial vs OpenMP timings"};
  std::uint32_t samples = 64;
  std::uint64_t n_updates = 300;
  std::uint32_t repeats = 16;
  app.add_option("--samples", samples, "sweep samples");
  app.add_option("--n-updates", n_updates, "MCTS iterations per search");
  app.add_option("--repeats", repeats, "repeat_search repeats");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());
  int mismatches = 0;

  const auto r43 = resultant_expr(4, 3);
  SweepConfig cfg;
  cfg.samples = samples;
  cfg.n_updates = n_updates;
  std::vector<SweepRow> a;
  std::vector<SweepRow> b;
  const double ts = time_it([&] { a = run_sweep_serial(r43, cfg); });
  const double tp = time_it([&] { b = run_sweep(r43, cfg); });
  report("sweep res(4,3)", ts, tp, a == b);
  mismatches += a == b ? 0 : 1;

  SearchParams p;
  p.n_updates = n_updates;
  p.repeats = repeats;
  p.record_trace = false;
  SearchResult ra;
  SearchResult rb;
  const double rs = time_it([&] { ra = repeat_search_serial(r43, p); });
  const double rp = time_it([&] { rb = repeat_search(r43, p); });
  report("repeat_search res(4,3)", rs, rp, ra == rb);
  mismatches += ra == rb ? 0 : 1;

  const auto r32 = resultant_expr(3, 2);
  BruteForceResult ba;
  BruteForceResult bb;
  const double bs = time_it([&] { ba = brute_force_serial(r32, Direction::Forward); });
  const double bp = time_it([&] { bb = brute_force(r32, Direction::Forward); });
  const bool bsame = ba.best == bb.best && ba.scheme == bb.scheme && ba.schemes_evaluated == bb.schemes_evaluated;
  report("brute force res(3,2)", bs, bp, bsame);
  mismatches += bsame ? 0 : 1;

  return mismatches == 0 ? 0 : 1;
}
