#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hornmcts/mcts.hpp"
#include "support.hpp"

using namespace hornmcts;

namespace {

const char *const kEq1 = "x^3*y^2 + x^2*y + x^3*z";

SearchParams params(double cp, std::uint64_t n, Criterion c, std::uint64_t seed) {
  SearchParams p;
  p.cp = cp;
  p.n_updates = n;
  p.criterion = c;
  p.seed = seed;
  return p;
}

TreeNode visited(std::uint64_t visits, std::uint64_t delta_sum) {
  TreeNode n;
  n.variable = 0;
  n.visits = visits;
  n.delta_sum = delta_sum;
  return n;
}

} // namespace

TEST_SUITE("mcts") {

TEST_CASE("temperature schedules") {
  auto p = params(2.0, 1000, Criterion::SaUct, 0);
  CHECK(temperature(0, p) == 2.0);
  CHECK(temperature(1000, p) == 0.0);
  CHECK(temperature(250, p) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(temperature(5000, p) == 0.0);

  p.schedule = {Schedule::Kind::Exponential, 100.0};
  CHECK(temperature(0, p) == 2.0);
  CHECK(temperature(100, p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(temperature(300, p) == doctest::Approx(0.25).epsilon(1e-12));

  p.schedule = {Schedule::Kind::Constant, 0.0};
  CHECK(temperature(999, p) == 2.0);

  p.criterion = Criterion::Uct;
  p.schedule = {};
  CHECK(temperature(999, p) == 2.0);
}

TEST_CASE("schedule and criterion text") {
  CHECK(parse_schedule("linear") == Schedule{});
  CHECK(parse_schedule("const").kind == Schedule::Kind::Constant);
  CHECK(parse_schedule("exp:250").half_life == 250.0);
  CHECK(to_string(parse_schedule("exp:12.5")) == "exp:12.5");
  CHECK_THROWS_AS(parse_schedule("exp:0"), SearchError);
  CHECK_THROWS_AS(parse_schedule("exp:"), SearchError);
  CHECK_THROWS_AS(parse_schedule("cosine"), SearchError);
  CHECK(parse_criterion("uct") == Criterion::Uct);
  CHECK(to_string(Criterion::SaUct) == "sa-uct");
  CHECK_THROWS_AS(parse_criterion("ucb"), SearchError);
}

TEST_CASE("parameter validation") {
  const auto e = parse(kEq1);
  auto p = params(-1.0, 10, Criterion::Uct, 0);
  CHECK_THROWS_AS(search(e, p), SearchError);
  p = params(1.0, 0, Criterion::Uct, 0);
  CHECK_THROWS_AS(search(e, p), SearchError);
  p = params(1.0, 10, Criterion::Uct, 0);
  p.repeats = 0;
  CHECK_THROWS_AS(repeat_search(e, p), SearchError);
  CHECK_THROWS_AS(search(parse("7"), params(1.0, 10, Criterion::Uct, 0)), SearchError);
}

TEST_CASE("node score") {
  CHECK(node_score(visited(4, 40), 12.0) == doctest::Approx(1.2));
  CHECK(node_score(visited(1, 12), 12.0) == doctest::Approx(1.0));
  CHECK(node_score(visited(3, 0), 5.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(node_score(visited(0, 0), 12.0), SearchError);
}

TEST_CASE("selection balances score and exploration") {
  std::vector<TreeNode> nodes(3);
  nodes[0].variable = TreeNode::kRoot;
  nodes[0].visits = 5;
  nodes[0].children = {1, 2};
  nodes[1] = visited(4, 40); // score 1.2, explore 2*0.25*sqrt(2 ln5 / 4) = 0.4485
  nodes[2] = visited(1, 12); // score 1.0, explore 2*0.25*sqrt(2 ln5) = 0.8970
  SplitMix64 rng(0);
  CHECK(best_child(nodes, nodes[0], 0.25, 12.0, rng) == 2);
  CHECK(best_child(nodes, nodes[0], 0.0, 12.0, rng) == 1);
  CHECK(uct_value(1.2, 5, 4, 0.25) == doctest::Approx(1.2 + 0.5 * std::sqrt(2.0 * std::log(5.0) / 4.0)));
}

TEST_CASE("one tree node per iteration, complete playouts") {
  const auto r = resultant_expr(2, 2);
  Search s(r, params(1.0, 200, Criterion::SaUct, 9));
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto rec = s.run_iteration(i);
    CHECK(s.root().visits == i + 1);
    CHECK(rec.path.size() == s.variables().size());
    auto sorted = rec.path;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::equal(sorted.begin(), sorted.end(), s.variables().begin(), s.variables().end()));
    CHECK(s.nodes().size() <= i + 2);
  }
}

TEST_CASE("finds the optimum of the worked example") {
  const auto e = parse(kEq1);
  const auto r = search(e, params(1.0, 100, Criterion::SaUct, 1));
  CHECK(r.best_delta == OpCount{4, 2});
  CHECK(r.best_scheme.order.front() == 0);
  CHECK(r.iterations_run == 100);
  CHECK(r.deltas_per_iteration.size() == 100);
}

TEST_CASE("best result is the minimum of the trace") {
  const auto e = resultant_expr(3, 2);
  const auto r = search(e, params(0.5, 300, Criterion::SaUct, 4));
  CHECK(*std::min_element(r.deltas_per_iteration.begin(), r.deltas_per_iteration.end()) == r.best_delta.total());
  CHECK(simplify(e, r.best_scheme).ops == r.best_delta);
}

TEST_CASE("constant schedule reproduces UCT exactly") {
  RandomExprParams rp;
  rp.seed = 99;
  const auto e = random_expr(rp);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto sa = params(0.7, 200, Criterion::SaUct, seed);
    sa.schedule = {Schedule::Kind::Constant, 0.0};
    CHECK(search(e, sa) == search(e, params(0.7, 200, Criterion::Uct, seed)));
  }
}

TEST_CASE("seeded searches are deterministic") {
  const auto e = resultant_expr(2, 2);
  const auto p = params(1.3, 150, Criterion::SaUct, 17);
  CHECK(search(e, p) == search(e, p));
  CHECK(search(e, p).deltas_per_iteration != search(e, params(1.3, 150, Criterion::SaUct, 18)).deltas_per_iteration);
}

TEST_CASE("parallel repeats match the serial reference") {
  const auto e = resultant_expr(3, 2);
  auto p = params(1.0, 100, Criterion::SaUct, 5);
  p.repeats = 6;
  const auto par = repeat_search(e, p);
  const auto ser = repeat_search_serial(e, p);
  CHECK(par == ser);
  std::uint64_t best = UINT64_MAX;
  for (std::uint32_t r = 0; r < p.repeats; ++r) {
    auto single = p;
    single.seed = p.seed + r;
    best = std::min(best, search(e, single).best_delta.total());
  }
  CHECK(par.best_delta.total() == best);
}

TEST_CASE("direction is carried into the scheme") {
  const auto e = parse(kEq1);
  auto p = params(1.0, 50, Criterion::SaUct, 2);
  p.direction = Direction::Backward;
  const auto r = search(e, p);
  CHECK(r.best_scheme.direction == Direction::Backward);
  CHECK(r.best_delta == OpCount{4, 2});
  CHECK(simplify(e, r.best_scheme).ops == r.best_delta);
}

} // TEST_SUITE
