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

#include "pathkit/baselines.hpp"

#include <cmath>
#include <limits>

#include "pathkit/error.hpp"
#include "pathkit/geometry.hpp"

namespace pathkit {

namespace {

// Deviation of the move current->neighbor from the heading, in [0, pi].
// Stairs (no horizontal displacement) are always eligible: deviation 0.
double turn_cost(const Vec3& from, const Vec3& to, double heading_rad) {
  double dx = to.x - from.x;
  double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) return 0.0;
  return angle_diff(std::atan2(dx, dy), heading_rad);
}

}  // namespace

std::optional<std::string> go_straight_step(const PanoGraph& g,
                                            const std::string& current,
                                            double heading_rad) {
  std::size_t u = g.index_of(current);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_v = static_cast<std::size_t>(-1);
  // Neighbors come sorted by id, so keeping strict improvement implements
  // the smallest-id tie-break.
  for (std::size_t v : g.neighbors(u)) {
    double cost =
        turn_cost(g.node(u).position, g.node(v).position, heading_rad);
    if (cost < best) {
      best = cost;
      best_v = v;
    }
  }
  if (best_v == static_cast<std::size_t>(-1) || best > M_PI / 2.0) {
    return std::nullopt;
  }
  return g.node(best_v).id;
}

std::vector<std::string> run_random_walk(const PanoGraph& g,
                                         const std::string& start,
                                         std::size_t n_steps,
                                         SplitMix64& rng) {
  std::size_t u = g.index_of(start);
  std::vector<std::string> out{g.node(u).id};
  for (std::size_t i = 0; i < n_steps; ++i) {
    const auto& nbrs = g.neighbors(u);
    if (nbrs.empty()) break;
    u = nbrs[rng.next_below(nbrs.size())];
    out.push_back(g.node(u).id);
  }
  return out;
}

std::vector<std::string> run_random_heading_straight(const PanoGraph& g,
                                                     const std::string& start,
                                                     std::size_t n_steps,
                                                     SplitMix64& rng) {
  std::size_t u = g.index_of(start);
  double heading = rng.next_unit() * 2.0 * M_PI;
  std::vector<std::string> out{g.node(u).id};
  for (std::size_t i = 0; i < n_steps; ++i) {
    auto next = go_straight_step(g, g.node(u).id, heading);
    if (!next) break;
    std::size_t v = g.index_of(*next);
    const Vec3& a = g.node(u).position;
    const Vec3& b = g.node(v).position;
    if (b.x != a.x || b.y != a.y) heading = bearing_rad(a, b);
    u = v;
    out.push_back(g.node(u).id);
  }
  return out;
}

PolicyRun run_policy(const PanoGraph& g, Policy policy,
                     const GuidePath& reference, std::size_t n_steps,
                     std::uint64_t seed) {
  if (reference.nodes.empty()) {
    throw Error("run_policy: reference has no nodes");
  }
  PolicyRun run;
  run.policy = policy;
  run.steps = n_steps;
  run.seed = seed;
  SplitMix64 rng(derive_seed(seed, reference.path_id));
  switch (policy) {
    case Policy::RandomWalk:
      run.executed = run_random_walk(g, reference.nodes.front(), n_steps, rng);
      break;
    case Policy::RandomHeadingStraight:
      run.executed =
          run_random_heading_straight(g, reference.nodes.front(), n_steps, rng);
      break;
    case Policy::OracleFirstStepStraight:
      run.executed = run_oracle_first_step_straight(g, reference, n_steps);
      break;
  }
  return run;
}

std::vector<std::string> run_oracle_first_step_straight(
    const PanoGraph& g, const GuidePath& reference, std::size_t n_steps) {
  if (reference.nodes.size() < 2) {
    throw Error("oracle baseline: reference shorter than 2 nodes");
  }
  std::size_t u = g.index_of(reference.nodes[0]);
  std::size_t v = g.index_of(reference.nodes[1]);
  if (!g.adjacent(u, v)) {
    throw Error("oracle baseline: reference first step is not an edge");
  }
  std::vector<std::string> out{g.node(u).id};
  if (n_steps == 0) return out;

  const Vec3& a = g.node(u).position;
  const Vec3& b = g.node(v).position;
  double heading = (b.x != a.x || b.y != a.y) ? bearing_rad(a, b) : 0.0;
  out.push_back(g.node(v).id);
  u = v;
  for (std::size_t i = 1; i < n_steps; ++i) {
    auto next = go_straight_step(g, g.node(u).id, heading);
    if (!next) break;
    std::size_t w = g.index_of(*next);
    const Vec3& c = g.node(u).position;
    const Vec3& d = g.node(w).position;
    if (d.x != c.x || d.y != c.y) heading = bearing_rad(c, d);
    u = w;
    out.push_back(g.node(u).id);
  }
  return out;
}

}  // namespace pathkit
