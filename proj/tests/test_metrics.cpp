// Copyright 2026 The pathkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "pathkit/error.hpp"
#include "pathkit/metrics.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace pathkit;
namespace pt = pathkit::testing;

namespace {

GuidePath reference_on(const PanoGraph& g, std::vector<std::string> nodes) {
  GuidePath p;
  p.path_id = "ref";
  p.building_id = g.building_id();
  p.nodes = std::move(nodes);
  p.length_m = path_length(g, p.nodes);
  auto geo = geodesic_distance(g, p.nodes.front(), p.nodes.back());
  p.geodesic_m = geo.value_or(0.0);
  return p;
}

std::vector<Vec3> grid_points(std::initializer_list<std::pair<int, int>> ps) {
  std::vector<Vec3> out;
  for (const auto& [x, y] : ps) {
    out.push_back({static_cast<double>(x), static_cast<double>(y), 0.0});
  }
  return out;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("dtw: identical sequences cost zero") {
  auto pts = grid_points({{0, 0}, {1, 0}, {2, 1}, {2, 2}});
  CHECK(dtw_cost(pts, pts) == 0.0);
}

TEST_CASE("dtw: single-point reference against two points") {
  std::vector<Vec3> ref{{0, 0, 0}};
  std::vector<Vec3> query{{0, 0, 0}, {3, 0, 0}};
  CHECK(dtw_cost(ref, query) == doctest::Approx(3.0));
}

TEST_CASE("dtw: empty sequence rejected") {
  std::vector<Vec3> empty;
  std::vector<Vec3> one{{0, 0, 0}};
  CHECK_THROWS_AS(dtw_cost(empty, one), Error);
  CHECK_THROWS_AS(dtw_cost(one, empty), Error);
}

TEST_CASE("dtw: equals exhaustive warp enumeration on small grids") {
  // 3x3 grid points, all sequence pairs with |R| + |Q| <= 6.
  std::vector<Vec3> grid;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) grid.push_back({double(x), double(y), 0.0});
  }
  std::vector<std::vector<std::vector<Vec3>>> by_len(5);
  by_len[1] = {};
  for (const Vec3& p : grid) by_len[1].push_back({p});
  for (std::size_t len = 2; len <= 4; ++len) {
    for (const auto& shorter : by_len[len - 1]) {
      for (const Vec3& p : grid) {
        auto seq = shorter;
        seq.push_back(p);
        by_len[len].push_back(std::move(seq));
      }
    }
  }
  std::size_t checked = 0;
  for (std::size_t la = 1; la <= 4; ++la) {
    for (std::size_t lb = 1; lb + la <= 6 && lb <= 4; ++lb) {
      // Sampled sweep: step through both lists with strides so the case
      // count stays around a few thousand per shape.
      std::size_t stride_a = std::max<std::size_t>(1, by_len[la].size() / 40);
      std::size_t stride_b = std::max<std::size_t>(1, by_len[lb].size() / 40);
      for (std::size_t i = 0; i < by_len[la].size(); i += stride_a) {
        for (std::size_t j = 0; j < by_len[lb].size(); j += stride_b) {
          double dp = dtw_cost(by_len[la][i], by_len[lb][j]);
          double brute = pt::brute_dtw(by_len[la][i], by_len[lb][j]);
          CHECK(dp == doctest::Approx(brute).epsilon(1e-12));
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 5000);
}

TEST_CASE("dtw: symmetric; appends bounded by one extra match") {
  // Note appending a query point CAN lower the cost (it may absorb rows
  // that were matched expensively before), so the check here is the true
  // extension bound: dtw(R, Q+q) <= dtw(R, Q) + d(r_last, q).
  SplitMix64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.next_below(5);
    std::size_t m = 1 + rng.next_below(5);
    std::vector<Vec3> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back({double(rng.next_below(3)), double(rng.next_below(3)), 0});
    }
    for (std::size_t j = 0; j < m; ++j) {
      b.push_back({double(rng.next_below(3)), double(rng.next_below(3)), 0});
    }
    CHECK(dtw_cost(a, b) == doctest::Approx(dtw_cost(b, a)).epsilon(1e-12));

    auto extended = b;
    Vec3 q{double(rng.next_below(3)), 2.0, 0};
    extended.push_back(q);
    CHECK(dtw_cost(a, extended) <=
          dtw_cost(a, b) + distance(a.back(), q) + 1e-12);
  }
}

TEST_CASE("ndtw: perfect execution and the exp(-1) worked value") {
  PanoGraph g = pt::line_graph();
  GuidePath ref = reference_on(g, {"a", "b", "c"});
  CHECK(ndtw(g, ref, ref.nodes) == 1.0);

  // Single-node reference; executed wanders one extra node 3 m away.
  std::vector<PanoNode> nodes{{"s", {0, 0, 0}, "r", 0},
                              {"t", {3, 0, 0}, "r", 0}};
  PanoGraph g2("two", std::move(nodes), {{"s", "t"}});
  GuidePath single;
  single.building_id = "two";
  single.nodes = {"s"};
  std::vector<std::string> executed{"s", "t"};
  CHECK(ndtw(g2, single, executed) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("ndtw: bounded in [0, 1], equals 1 iff the warp cost is zero") {
  PanoGraph g = pt::random_graph(12, 8, 19);
  GuidePath ref = reference_on(g, *geodesic_path(g, g.node(0).id,
                                                 g.node(7).id));
  SplitMix64 rng(4);
  std::vector<std::string> walk{ref.nodes.front()};
  for (int step = 0; step < 12; ++step) {
    double v = ndtw(g, ref, walk);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    std::vector<Vec3> ref_pts, walk_pts;
    for (const auto& id : ref.nodes) ref_pts.push_back(g.node(id).position);
    for (const auto& id : walk) walk_pts.push_back(g.node(id).position);
    CHECK((v == 1.0) == (dtw_cost(ref_pts, walk_pts) == 0.0));
    std::size_t u = g.index_of(walk.back());
    const auto& nbrs = g.neighbors(u);
    if (nbrs.empty()) break;
    walk.push_back(g.node(nbrs[rng.next_below(nbrs.size())]).id);
  }
  // Walking the reference exactly pins ndtw at 1; progress toward it from
  // the start raises ndtw (this is what makes the shaped reward positive).
  std::vector<std::string> start_only{ref.nodes.front()};
  CHECK(ndtw(g, ref, ref.nodes) == 1.0);
  CHECK(ndtw(g, ref, ref.nodes) >= ndtw(g, ref, start_only));
}

TEST_CASE("evaluate: perfect follow of a non-shortest reference") {
  PanoGraph g = pt::four_room_graph();
  // a0 .. d1 via r2 is 13 m but the geodesic is 9 m.
  GuidePath ref = reference_on(g, {"a0", "a1", "c0", "c1", "d0", "d1"});
  Episode ep{ref, ref.nodes};
  MetricsReport r = evaluate_episode(g, ep);
  CHECK(r.ne_m == 0.0);
  CHECK(r.sr == 1);
  CHECK(r.spl == doctest::Approx(9.0 / 13.0));
  CHECK(r.ndtw == 1.0);
  CHECK(r.sdtw == 1.0);
}

TEST_CASE("evaluate: stopping at the start zeroes the gated metrics") {
  PanoGraph g = pt::four_room_graph();
  GuidePath ref = reference_on(g, {"a0", "a1", "c0", "c1", "d0", "d1"});
  REQUIRE(ref.geodesic_m == doctest::Approx(9.0));
  Episode ep{ref, {"a0"}};
  MetricsReport r = evaluate_episode(g, ep);
  CHECK(r.pl_m == 0.0);
  CHECK(r.ne_m == doctest::Approx(9.0));
  CHECK(r.sr == 0);
  CHECK(r.spl == 0.0);
  CHECK(r.sdtw == 0.0);
  CHECK(r.ndtw > 0.0);
}

TEST_CASE("evaluate: success threshold is inclusive at exactly 3 m") {
  std::vector<PanoNode> nodes{{"a", {0, 0, 0}, "r", 0},
                              {"b", {4, 0, 0}, "r", 0},
                              {"c", {4, 3, 0}, "r", 0}};
  PanoGraph g("thresh", std::move(nodes), {{"a", "b"}, {"b", "c"}});
  GuidePath ref = reference_on(g, {"a", "b", "c"});
  Episode ep{ref, {"a", "b"}};  // stops 3.0 m from the goal
  MetricsReport r = evaluate_episode(g, ep);
  CHECK(r.ne_m == doctest::Approx(3.0));
  CHECK(r.sr == 1);
  CHECK(r.sdtw == doctest::Approx(r.ndtw));
}

TEST_CASE("evaluate: euclidean NE differs from geodesic NE") {
  // Stop one edge away around a corner: geodesic 7, euclidean 5.
  std::vector<PanoNode> nodes{{"a", {0, 0, 0}, "r", 0},
                              {"b", {4, 0, 0}, "r", 0},
                              {"c", {4, 3, 0}, "r", 0}};
  PanoGraph g("corner", std::move(nodes), {{"a", "b"}, {"b", "c"}});
  GuidePath ref = reference_on(g, {"a", "b", "c"});
  Episode ep{ref, {"a"}};
  EvalOptions geo;
  EvalOptions euc;
  euc.ne_euclidean = true;
  CHECK(evaluate_episode(g, ep, geo).ne_m == doctest::Approx(7.0));
  CHECK(evaluate_episode(g, ep, euc).ne_m == doctest::Approx(5.0));
}

TEST_CASE("evaluate: episode validation errors") {
  PanoGraph g = pt::line_graph();
  GuidePath ref = reference_on(g, {"a", "b", "c"});
  CHECK_THROWS_AS(evaluate_episode(g, Episode{ref, {}}), Error);
  CHECK_THROWS_AS(evaluate_episode(g, Episode{ref, {"b"}}), Error);
  CHECK_THROWS_AS(evaluate_episode(g, Episode{ref, {"a", "c"}}), Error);

  GuidePath degenerate = reference_on(g, {"a"});
  CHECK_THROWS_AS(evaluate_episode(g, Episode{degenerate, {"a"}}), Error);
}

TEST_CASE("reward: telescoping sum and terminal values") {
  PanoGraph g = pt::four_room_graph();
  GuidePath ref = reference_on(g, {"a0", "a1", "c0", "c1", "d0", "d1"});

  std::vector<std::string> walk{"a0", "a1", "c0", "c1", "d0", "d1"};
  double total = 0.0;
  for (std::size_t t = 1; t < walk.size(); ++t) {
    std::span<const std::string> cur(walk.data(), t + 1);
    std::span<const std::string> prev(walk.data(), t);
    total += step_reward(g, ref, cur, prev, false);
  }
  double expected = ndtw(g, ref, walk) -
                    ndtw(g, ref, std::vector<std::string>{"a0"});
  CHECK(total == doctest::Approx(expected).epsilon(1e-12));

  // Terminal term: stopped exactly at the goal adds +1 under defaults.
  std::span<const std::string> full(walk);
  std::span<const std::string> prefix(walk.data(), walk.size() - 1);
  double with_stop = step_reward(g, ref, full, prefix, true);
  double without = step_reward(g, ref, full, prefix, false);
  CHECK(with_stop - without == doctest::Approx(1.0));
}

TEST_CASE("reward: terminal term at NE = 6 with d_th = 3 is -1") {
  std::vector<PanoNode> nodes{{"a", {0, 0, 0}, "r", 0},
                              {"b", {6, 0, 0}, "r", 0}};
  PanoGraph g("six", std::move(nodes), {{"a", "b"}});
  GuidePath ref;
  ref.building_id = "six";
  ref.nodes = {"b", "a"};  // goal is a
  ref.length_m = 6.0;
  ref.geodesic_m = 6.0;
  std::vector<std::string> stay{"b"};
  // Stopped at b: NE = 6, terminal = 1 - 6/3 = -1; dense part is zero.
  double r = step_reward(g, ref, stay, stay, true);
  double dense = step_reward(g, ref, stay, stay, false);
  CHECK(r - dense == doctest::Approx(-1.0));
}

TEST_CASE("reward: prefix validation") {
  PanoGraph g = pt::line_graph();
  GuidePath ref = reference_on(g, {"a", "b", "c"});
  std::vector<std::string> empty;
  std::vector<std::string> ok{"a", "b"};
  std::vector<std::string> divergent{"b", "a"};
  CHECK_THROWS_AS(step_reward(g, ref, ok, empty, false), Error);
  CHECK_THROWS_AS(step_reward(g, ref, ok, divergent, false), Error);
}

TEST_CASE("qa: decision table") {
  auto ok = FollowerAttempt{true, 0.8};
  auto bad = FollowerAttempt{false, 0.1};

  std::vector<FollowerAttempt> first_ok{ok};
  QADecision d1 = validate_annotation(first_ok);
  CHECK(d1.verdict == Verdict::Accept);
  CHECK(*d1.selected_attempt == 0);

  std::vector<FollowerAttempt> first_fail{bad};
  QADecision d2 = validate_annotation(first_fail);
  CHECK(d2.verdict == Verdict::RetryFollower);
  CHECK(!d2.selected_attempt.has_value());

  std::vector<FollowerAttempt> retry_ok{bad, ok};
  QADecision d3 = validate_annotation(retry_ok);
  CHECK(d3.verdict == Verdict::Accept);
  CHECK(*d3.selected_attempt == 1);

  std::vector<FollowerAttempt> both_fail{bad, bad};
  QADecision d4 = validate_annotation(both_fail);
  CHECK(d4.verdict == Verdict::ReEnqueuePath);

  std::vector<FollowerAttempt> three{{false, 0.2}, {true, 0.9}, {true, 0.9}};
  QADecision d5 = validate_annotation(three);
  CHECK(d5.verdict == Verdict::SelectBest);
  CHECK(*d5.selected_attempt == 1);  // tie broken toward the lower index

  std::vector<FollowerAttempt> none;
  CHECK_THROWS_AS(validate_annotation(none), Error);
}

TEST_CASE("qa: best-of-three is invariant under positive rescaling") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FollowerAttempt> attempts;
    for (int i = 0; i < 3; ++i) {
      attempts.push_back({rng.next_below(2) == 1, rng.next_unit()});
    }
    double scale = 0.1 + 5.0 * rng.next_unit();
    std::vector<FollowerAttempt> scaled = attempts;
    for (auto& a : scaled) a.sdtw *= scale;
    CHECK(*validate_annotation(attempts).selected_attempt ==
          *validate_annotation(scaled).selected_attempt);
  }
}

TEST_CASE("aggregate: identity, simple mean, streaming oracle") {
  MetricsReport one{10.0, 2.0, 1, 0.9, 0.8, 0.8};
  std::vector<MetricsReport> single{one};
  AggregateReport a = aggregate(single);
  CHECK(a.pl_m == 10.0);
  CHECK(a.sr == 1.0);

  std::vector<MetricsReport> two{{0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};
  CHECK(aggregate(two).sr == doctest::Approx(0.5));

  SplitMix64 rng(8);
  std::vector<MetricsReport> many;
  for (int i = 0; i < 100; ++i) {
    int sr = rng.next_below(2) == 1 ? 1 : 0;
    double nd = rng.next_unit();
    many.push_back({20.0 * rng.next_unit(), 10.0 * rng.next_unit(), sr,
                    sr * rng.next_unit(), nd, sr * nd});
  }
  AggregateReport agg = aggregate(many);
  // Two-pass oracle: accumulate each field independently, then divide.
  double sum_ndtw = 0.0;
  for (const auto& m : many) sum_ndtw += m.ndtw;
  CHECK(agg.ndtw == doctest::Approx(sum_ndtw / 100.0).epsilon(1e-12));

  std::vector<MetricsReport> empty;
  CHECK_THROWS_AS(aggregate(empty), Error);
}

}  // TEST_SUITE
