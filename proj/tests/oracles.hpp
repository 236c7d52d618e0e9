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
//
// Brute-force reference implementations for tests. These deliberately use
// different algorithms than the library (Floyd-Warshall vs Dijkstra,
// Bellman-Ford vs heap Dijkstra, full warp enumeration vs DP) so each check
// is an independent route to the same value.

#ifndef PATHKIT_TESTS_ORACLES_HPP_
#define PATHKIT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "pathkit/alignment.hpp"
#include "pathkit/geometry.hpp"
#include "pathkit/navgraph.hpp"
#include "pathkit/sampler.hpp"

namespace pathkit::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// All-pairs shortest path distances by Floyd-Warshall.
inline std::vector<std::vector<double>> floyd_warshall(const PanoGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& [a, b] : g.edges()) {
    double w = g.edge_length(a, b);
    d[a][b] = std::min(d[a][b], w);
    d[b][a] = std::min(d[b][a], w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

/// Single-source shortest distances in a constrained digraph, Bellman-Ford.
inline std::vector<double> bellman_ford(const PanoGraph& g,
                                        const ConstrainedDigraph& cd,
                                        std::size_t src) {
  const std::size_t n = cd.member_panos.size();
  std::vector<double> dist(n, kInf);
  dist[src] = 0.0;
  for (std::size_t round = 0; round + 1 < n || round == 0; ++round) {
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (dist[u] == kInf) continue;
      std::size_t gu = g.index_of(cd.member_panos[u]);
      for (std::size_t v : cd.out_arcs[u]) {
        double w = g.edge_length(gu, g.index_of(cd.member_panos[v]));
        if (dist[u] + w < dist[v]) {
          dist[v] = dist[u] + w;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return dist;
}

/// Minimum warp cost by explicit enumeration of every monotone warp from
/// (0,0) to (n-1,m-1), accumulating forward. Exponential; small inputs only.
inline double brute_dtw(std::span<const Vec3> ref, std::span<const Vec3> query,
                        std::size_t* warps_seen = nullptr) {
  const std::size_t n = ref.size();
  const std::size_t m = query.size();
  double best = kInf;
  std::size_t count = 0;
  std::function<void(std::size_t, std::size_t, double)> walk =
      [&](std::size_t i, std::size_t j, double acc) {
        acc += distance(ref[i], query[j]);
        if (i == n - 1 && j == m - 1) {
          ++count;
          best = std::min(best, acc);
          return;
        }
        if (i + 1 < n) walk(i + 1, j, acc);
        if (j + 1 < m) walk(i, j + 1, acc);
        if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, acc);
      };
  walk(0, 0, 0.0);
  if (warps_seen) *warps_seen = count;
  return best;
}

/// Same enumeration over the token lattice with token_cost.
inline double brute_alignment(std::span<const std::string> manual,
                              std::span<const TimedToken> asr) {
  const std::size_t n = manual.size();
  const std::size_t m = asr.size();
  double best = kInf;
  std::function<void(std::size_t, std::size_t, double)> walk =
      [&](std::size_t i, std::size_t j, double acc) {
        acc += token_cost(manual[i], asr[j].text);
        if (i == n - 1 && j == m - 1) {
          best = std::min(best, acc);
          return;
        }
        if (i + 1 < n) walk(i + 1, j, acc);
        if (j + 1 < m) walk(i, j + 1, acc);
        if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, acc);
      };
  walk(0, 0, 0.0);
  return best;
}

/// Step-by-step greedy reference: recounts coverage from scratch each round
/// instead of updating incrementally. Returns the selected path_ids in
/// order.
inline std::vector<std::string> greedy_reference(
    const std::vector<GuidePath>& pool, std::size_t target, double max_len_m,
    std::size_t max_per_building) {
  std::vector<std::string> chosen_ids;
  std::vector<const GuidePath*> chosen;
  std::vector<bool> used(pool.size(), false);
  while (chosen.size() < target) {
    // Recount from zero.
    std::map<std::string, long long> counts;
    std::map<std::string, std::size_t> buildings;
    for (const GuidePath* p : chosen) {
      for (const std::string& node : p->nodes) counts[node] += 1;
      buildings[p->building_id] += 1;
    }
    double best = kInf;
    std::size_t best_i = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      const GuidePath& c = pool[i];
      if (c.length_m > max_len_m) continue;
      auto itb = buildings.find(c.building_id);
      if (itb != buildings.end() && itb->second >= max_per_building) continue;
      double sum = 0.0;
      for (const std::string& node : c.nodes) {
        auto it = counts.find(node);
        if (it != counts.end()) sum += static_cast<double>(it->second);
      }
      double obj = c.geodesic_m / c.length_m +
                   sum / static_cast<double>(c.nodes.size());
      if (obj < best || (obj == best && c.path_id < pool[best_i].path_id)) {
        best = obj;
        best_i = i;
      }
    }
    if (best_i == pool.size()) break;
    used[best_i] = true;
    chosen.push_back(&pool[best_i]);
    chosen_ids.push_back(pool[best_i].path_id);
  }
  return chosen_ids;
}

/// Central finite differences of a scalar function.
inline std::vector<double> finite_difference_grad(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> z, double h = 1e-5) {
  std::vector<double> grad(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    double orig = z[i];
    z[i] = orig + h;
    double hi = f(z);
    z[i] = orig - h;
    double lo = f(z);
    z[i] = orig;
    grad[i] = (hi - lo) / (2.0 * h);
  }
  return grad;
}

// ---- Shared fixtures ----

/// a--b--c line with |ab| = 2 and |bc| = 3, single room.
inline PanoGraph line_graph() {
  std::vector<PanoNode> nodes{
      {"a", {0, 0, 0}, "hall", 0},
      {"b", {2, 0, 0}, "hall", 0},
      {"c", {5, 0, 0}, "hall", 0},
  };
  return PanoGraph("line", std::move(nodes), {{"a", "b"}, {"b", "c"}});
}

/// Four rooms with pano-level doors r0-r1, r0-r2, r2-r3, r1-r3, two panos
/// each; the room graph contains the simple path (r0, r2, r3).
inline PanoGraph four_room_graph() {
  std::vector<PanoNode> nodes{
      {"a0", {0, 0, 0}, "r0", 0}, {"a1", {2, 0, 0}, "r0", 0},
      {"b0", {0, 4, 0}, "r1", 0}, {"b1", {2, 4, 0}, "r1", 0},
      {"c0", {5, 0, 0}, "r2", 0}, {"c1", {7, 0, 0}, "r2", 0},
      {"d0", {7, 4, 0}, "r3", 0}, {"d1", {5, 4, 0}, "r3", 0},
  };
  std::vector<std::pair<std::string, std::string>> edges{
      {"a0", "a1"}, {"b0", "b1"}, {"c0", "c1"}, {"d0", "d1"},
      {"a1", "c0"},  // r0-r2
      {"c1", "d0"},  // r2-r3
      {"a0", "b0"},  // r0-r1
      {"b1", "d1"},  // r1-r3
  };
  return PanoGraph("fourrooms", std::move(nodes), edges);
}

/// Deterministic random connected graph: a random spanning tree plus extra
/// chords, all in one room.
inline PanoGraph random_graph(std::size_t n, std::size_t extra_edges,
                              std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<PanoNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = "n" + std::to_string(100 + i);
    nodes.push_back({id,
                     {rng.next_unit() * 20.0, rng.next_unit() * 20.0,
                      rng.next_unit() * 3.0},
                     "room",
                     0});
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = rng.next_below(i);
    edges.emplace_back(nodes[i].id, nodes[j].id);
  }
  for (std::size_t k = 0; k < extra_edges; ++k) {
    std::size_t i = rng.next_below(n);
    std::size_t j = rng.next_below(n);
    if (i != j) edges.emplace_back(nodes[i].id, nodes[j].id);
  }
  return PanoGraph("rand-" + std::to_string(seed), std::move(nodes), edges);
}

}  // namespace pathkit::testing

#endif  // PATHKIT_TESTS_ORACLES_HPP_
