#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hornmcts/commands.hpp"
#include "support.hpp"

using namespace hornmcts;

namespace {

SweepConfig small_config(Criterion c, std::uint32_t samples) {
  SweepConfig cfg;
  cfg.samples = samples;
  cfg.n_updates = 60;
  cfg.criterion = c;
  cfg.base_seed = 100;
  return cfg;
}

std::string csv_of(const std::vector<SweepRow> &rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

std::vector<SweepPoint> points(std::initializer_list<std::pair<double, std::uint64_t>> pts) {
  std::vector<SweepPoint> out;
  for (const auto &[cp, ops] : pts) {
    out.push_back({cp, ops});
  }
  return out;
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("cp samples are log-uniform in range and reproducible") {
  auto cfg = small_config(Criterion::SaUct, 2000);
  const auto cps = sample_cps(cfg);
  REQUIRE(cps.size() == 2000);
  std::size_t below_one = 0;
  for (double cp : cps) {
    CHECK(cp >= cfg.cp_min);
    CHECK(cp <= cfg.cp_max);
    below_one += cp < 1.0 ? 1 : 0;
    CHECK(std::stod(format_double(cp)) == cp);
  }
  // two of three decades lie below 1
  CHECK(below_one > 1250);
  CHECK(below_one < 1420);
  CHECK(sample_cps(cfg) == cps);
  cfg.base_seed += 1;
  CHECK(sample_cps(cfg) != cps);
}

TEST_CASE("sweep rows, CSV and determinism") {
  const auto e = resultant_expr(2, 2);
  const auto cfg = small_config(Criterion::SaUct, 12);
  const auto rows = run_sweep(e, cfg);
  REQUIRE(rows.size() == 12);
  for (std::uint32_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].sample == k);
    CHECK(rows[k].seed == cfg.base_seed + k);
    CHECK(rows[k].n_updates == 60);
  }
  CHECK(rows == run_sweep_serial(e, cfg));
  const auto text = csv_of(rows);
  CHECK(text == csv_of(run_sweep(e, cfg)));
  CHECK(text.substr(0, text.find('\n')) == kSweepCsvHeader);

  std::istringstream in(text);
  CHECK(read_sweep_csv(in) == rows);
}

TEST_CASE("single sample sweep") {
  const auto rows = run_sweep(resultant_expr(1, 1), small_config(Criterion::Uct, 1));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ops.total() == 3);
  CHECK(csv_of(rows).find(",uct,60,forward,100,3,2,1,\"") != std::string::npos);
}

TEST_CASE("CSV reader rejects malformed input") {
  std::istringstream empty("");
  CHECK_THROWS(read_sweep_csv(empty));
  std::istringstream header("sample,cp\n");
  CHECK_THROWS(read_sweep_csv(header));
  std::istringstream bad_total(std::string(kSweepCsvHeader) + "\n0,1,uct,10,forward,0,5,1,1,\"x;forward\"\n");
  CHECK_THROWS(read_sweep_csv(bad_total));
  std::istringstream bad_number(std::string(kSweepCsvHeader) + "\n0,one,uct,10,forward,0,2,1,1,\"x;forward\"\n");
  CHECK_THROWS(read_sweep_csv(bad_number));
}

TEST_CASE("region of interest") {
  // identical results everywhere: the whole sampled range, 3 decades
  const auto flat = points({{0.01, 10}, {0.1, 10}, {1.0, 10}, {10.0, 10}});
  CHECK(roi_width(flat, 0.05, 3) == doctest::Approx(3.0));
  const auto roi = region_of_interest(flat, 0.05, 3);
  CHECK(roi.cp_low == doctest::Approx(0.01));
  CHECK(roi.cp_high == doctest::Approx(10.0));
  CHECK(roi.global_min == 10);

  // only the middle bin reaches the minimum
  const auto one = points({{0.01, 20}, {0.5, 10}, {10.0, 20}});
  CHECK(roi_width(one, 0.05, 3) == doctest::Approx(1.0));
  CHECK(region_of_interest(one, 0.05, 3).cp_low == doctest::Approx(0.1));

  // the longest run wins, not the total count of good bins
  const auto runs = points({{0.011, 10}, {0.05, 30}, {0.2, 10}, {0.8, 10}, {3.0, 30}, {9.9, 10}});
  CHECK(roi_width(runs, 0.05, 6) == doctest::Approx(2.0 * std::log10(9.9 / 0.011) / 6.0));

  // empty bins are never good
  const auto gap = points({{0.01, 10}, {10.0, 10}});
  CHECK(roi_width(gap, 0.05, 3) == doctest::Approx(1.0));
}

TEST_CASE("region of interest grows with epsilon") {
  SplitMix64 rng(3);
  std::vector<SweepPoint> pts;
  for (int i = 0; i < 400; ++i) {
    const double cp = std::pow(10.0, -2.0 + 3.0 * rng.uniform01());
    pts.push_back({cp, 100 + rng.below(40)});
  }
  double last = 0.0;
  for (double eps : {0.001, 0.01, 0.05, 0.1, 0.2, 0.4}) {
    const double w = roi_width(pts, eps);
    CHECK(w >= last);
    last = w;
  }
  CHECK(last == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("per-bin minima") {
  const auto mins = per_bin_minima(points({{1.0, 5}, {1.5, 3}, {50.0, 9}}), 2, 1.0, 100.0);
  REQUIRE(mins.size() == 2);
  CHECK(mins[0] == 3);
  CHECK(mins[1] == 9);
  const auto sparse = per_bin_minima(points({{1.0, 5}}), 4, 1.0, 100.0);
  CHECK_FALSE(sparse[3].has_value());
}

TEST_CASE("brute force") {
  const auto e = parse("x^3*y^2 + x^2*y + x^3*z");
  const auto r = brute_force(e, Direction::Forward);
  CHECK(r.best == OpCount{4, 2});
  CHECK(r.schemes_evaluated == 6);
  CHECK(r.scheme.order == std::vector<AtomId>{0, 1, 2});

  const auto one = parse("3*x^4 + x^2 + 5");
  const auto r1 = brute_force(one, Direction::Forward);
  CHECK(r1.schemes_evaluated == 1);
  CHECK(r1.best == simplify(one, {{0}, Direction::Forward}).ops);

  CHECK_THROWS_AS(brute_force(resultant_expr(4, 3), Direction::Forward), SearchError);
}

TEST_CASE("brute force on res(2,1)") {
  const auto e = resultant_expr(2, 1);
  for (auto dir : {Direction::Forward, Direction::Backward}) {
    const auto r = brute_force(e, dir);
    CHECK(r.schemes_evaluated == 120);
    const auto ser = brute_force_serial(e, dir);
    CHECK(ser.best == r.best);
    CHECK(ser.scheme == r.scheme);
    // the reference pipeline agrees on the winning scheme
    CHECK(simplify_reference(e, r.scheme).ops == r.best);
    SearchParams p;
    p.n_updates = 40;
    p.direction = dir;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      p.seed = seed;
      CHECK(search(e, p).best_delta.total() >= r.best.total());
    }
  }
}

} // TEST_SUITE
