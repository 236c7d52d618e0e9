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

#include "pathkit/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "pathkit/error.hpp"

namespace pathkit {

std::vector<RoomPath> enumerate_room_paths(const RoomGraph& rg, int max_rooms,
                                           int max_levels) {
  if (max_rooms < 1 || max_levels < 1) {
    throw Error("enumerate_room_paths: max_rooms and max_levels must be >= 1");
  }
  std::vector<RoomPath> out;
  std::vector<std::size_t> stack;
  std::vector<bool> on_path(rg.size(), false);

  // DFS from every start vertex; neighbor order is vertex-id order, so the
  // raw enumeration is already deterministic. Levels are tracked as the set
  // of distinct level_ids on the partial path.
  std::set<int> levels;
  auto emit = [&]() {
    RoomPath rp;
    rp.vertices.reserve(stack.size());
    for (std::size_t v : stack) rp.vertices.push_back(rg.vertex(v).id);
    out.push_back(std::move(rp));
  };

  std::function<void(std::size_t)> extend = [&](std::size_t v) {
    int lvl = rg.vertex(v).level_id;
    bool new_level = levels.insert(lvl).second;
    if (static_cast<int>(levels.size()) <= max_levels) {
      stack.push_back(v);
      on_path[v] = true;
      emit();
      if (static_cast<int>(stack.size()) < max_rooms) {
        for (std::size_t w : rg.neighbors(v)) {
          if (!on_path[w]) extend(w);
        }
      }
      on_path[v] = false;
      stack.pop_back();
    }
    if (new_level) levels.erase(lvl);
  };

  for (std::size_t v = 0; v < rg.size(); ++v) extend(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ConstrainedDigraph::index_of(const std::string& pano_id) const {
  auto it =
      std::lower_bound(member_panos.begin(), member_panos.end(), pano_id);
  if (it == member_panos.end() || *it != pano_id) {
    throw Error("pano not in constrained digraph: " + pano_id);
  }
  return static_cast<std::size_t>(it - member_panos.begin());
}

bool ConstrainedDigraph::has_arc(std::size_t from, std::size_t to) const {
  const auto& arcs = out_arcs[from];
  return std::binary_search(arcs.begin(), arcs.end(), to);
}

std::size_t ConstrainedDigraph::arc_count() const {
  std::size_t n = 0;
  for (const auto& arcs : out_arcs) n += arcs.size();
  return n;
}

ConstrainedDigraph build_constrained_digraph(const PanoGraph& g,
                                             const RoomGraph& rg,
                                             const RoomPath& rp) {
  if (rp.vertices.empty()) {
    throw Error("constrained digraph: empty room path");
  }
  ConstrainedDigraph cd;
  cd.room_path = rp;

  // Position of each room vertex along the path; also validates vertices,
  // simplicity and consecutive adjacency.
  std::map<std::size_t, std::size_t> path_pos;
  std::size_t prev_vertex = RoomGraph::npos;
  for (std::size_t i = 0; i < rp.vertices.size(); ++i) {
    std::size_t v = rg.index_of(rp.vertices[i]);
    if (!path_pos.emplace(v, i).second) {
      throw Error("constrained digraph: room path repeats " + rp.vertices[i]);
    }
    if (prev_vertex != RoomGraph::npos && !rg.adjacent(prev_vertex, v)) {
      throw Error("constrained digraph: rooms " + rp.vertices[i - 1] +
                  " and " + rp.vertices[i] + " are not adjacent");
    }
    prev_vertex = v;
    cd.room_members.push_back(rg.vertex(v).panos);
    for (const std::string& p : rg.vertex(v).panos) {
      cd.member_panos.push_back(p);
    }
  }
  std::sort(cd.member_panos.begin(), cd.member_panos.end());

  cd.out_arcs.assign(cd.member_panos.size(), {});
  auto member_index = [&](const std::string& id) -> std::size_t {
    auto it =
        std::lower_bound(cd.member_panos.begin(), cd.member_panos.end(), id);
    if (it == cd.member_panos.end() || *it != id) {
      return static_cast<std::size_t>(-1);
    }
    return static_cast<std::size_t>(it - cd.member_panos.begin());
  };

  for (const auto& [a, b] : g.edges()) {
    const std::string& ida = g.node(a).id;
    const std::string& idb = g.node(b).id;
    std::size_t ma = member_index(ida);
    std::size_t mb = member_index(idb);
    if (ma == static_cast<std::size_t>(-1) ||
        mb == static_cast<std::size_t>(-1)) {
      continue;
    }
    std::size_t ra = rg.vertex_of_pano(ida);
    std::size_t rb = rg.vertex_of_pano(idb);
    std::size_t pa = path_pos.at(ra);
    std::size_t pb = path_pos.at(rb);
    if (pa == pb) {
      cd.out_arcs[ma].push_back(mb);
      cd.out_arcs[mb].push_back(ma);
    } else if (pb == pa + 1) {
      cd.out_arcs[ma].push_back(mb);  // forward crossing only
    } else if (pa == pb + 1) {
      cd.out_arcs[mb].push_back(ma);
    }
    // Non-consecutive room pairs contribute no arc.
  }
  for (auto& arcs : cd.out_arcs) std::sort(arcs.begin(), arcs.end());
  return cd;
}

namespace {

// Dijkstra over the digraph; returns the witness node sequence or nullopt.
std::optional<std::vector<std::size_t>> digraph_shortest_path(
    const PanoGraph& g, const ConstrainedDigraph& cd, std::size_t src,
    std::size_t dst) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(cd.member_panos.size(), kInf);
  std::vector<std::size_t> prev(cd.member_panos.size(),
                                static_cast<std::size_t>(-1));
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    std::size_t gu = g.index_of(cd.member_panos[u]);
    for (std::size_t v : cd.out_arcs[u]) {
      double nd = d + g.edge_length(gu, g.index_of(cd.member_panos[v]));
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        heap.emplace(nd, v);
      }
    }
  }
  if (!std::isfinite(dist[dst])) return std::nullopt;
  std::vector<std::size_t> path;
  for (std::size_t v = dst;; v = prev[v]) {
    path.push_back(v);
    if (v == src) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<GuidePath> generate_candidate_path(const PanoGraph& g,
                                                 const ConstrainedDigraph& cd,
                                                 SplitMix64& rng) {
  if (cd.room_members.empty()) {
    throw Error("generate_candidate_path: empty room path");
  }
  const std::vector<std::string>& first = cd.room_members.front();
  const std::vector<std::string>& last = cd.room_members.back();
  if (first.empty() || last.empty()) {
    throw Error("generate_candidate_path: room with no panos");
  }
  // Two draws are consumed even when the candidate is discarded, so the
  // stream position stays independent of graph topology.
  const std::string& start = first[rng.next_below(first.size())];
  const std::string& goal = last[rng.next_below(last.size())];
  if (start == goal) return std::nullopt;
  auto path =
      digraph_shortest_path(g, cd, cd.index_of(start), cd.index_of(goal));
  if (!path) return std::nullopt;

  GuidePath gp;
  gp.building_id = g.building_id();
  gp.room_path = cd.room_path.vertices;
  gp.nodes.reserve(path->size());
  for (std::size_t m : *path) gp.nodes.push_back(cd.member_panos[m]);
  gp.length_m = path_length(g, gp.nodes);
  auto geo = geodesic_distance(g, start, goal);
  // Members of one digraph are connected to each other in the full graph
  // whenever the digraph path exists, so geo is always present here.
  gp.geodesic_m = geo ? *geo : std::numeric_limits<double>::infinity();
  return gp;
}

void CoverageState::add(const GuidePath& path) {
  for (const std::string& node : path.nodes) counts[node] += 1;
  per_building[path.building_id] += 1;
}

double selection_objective(const GuidePath& cand, const CoverageState& cov) {
  if (!(cand.length_m > 0.0)) {
    throw Error("selection_objective: zero-length path " + cand.path_id);
  }
  double sum = 0.0;
  for (const std::string& node : cand.nodes) {
    auto it = cov.counts.find(node);
    if (it != cov.counts.end()) sum += static_cast<double>(it->second);
  }
  return cand.geodesic_m / cand.length_m +
         sum / static_cast<double>(cand.nodes.size());
}

PathDataset greedy_select(std::vector<GuidePath> candidates,
                          std::size_t target_size, double max_len_m,
                          std::size_t max_per_building) {
  if (candidates.empty()) throw Error("greedy_select: empty candidate pool");
  if (target_size < 1) throw Error("greedy_select: target_size must be >= 1");
  {
    std::set<std::string> ids;
    for (const GuidePath& c : candidates) {
      if (!ids.insert(c.path_id).second) {
        throw Error("greedy_select: duplicate path_id " + c.path_id);
      }
    }
  }

  PathDataset ds;
  ds.requested = target_size;
  std::vector<bool> taken(candidates.size(), false);

  while (ds.paths.size() < target_size) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = candidates.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (taken[i]) continue;
      const GuidePath& c = candidates[i];
      if (c.length_m > max_len_m) continue;
      auto it = ds.coverage.per_building.find(c.building_id);
      if (it != ds.coverage.per_building.end() &&
          it->second >= max_per_building) {
        continue;
      }
      double obj = selection_objective(c, ds.coverage);
      if (obj < best ||
          (obj == best && c.path_id < candidates[best_i].path_id)) {
        best = obj;
        best_i = i;
      }
    }
    if (best_i == candidates.size()) break;  // pool exhausted
    taken[best_i] = true;
    ds.coverage.add(candidates[best_i]);
    ds.paths.push_back(std::move(candidates[best_i]));
  }
  return ds;
}

std::vector<GuidePath> generate_candidates(const PanoGraph& g,
                                           const SamplerConfig& cfg) {
  RoomGraph rg = build_room_graph(g);
  std::vector<RoomPath> room_paths =
      enumerate_room_paths(rg, cfg.max_rooms, cfg.max_levels);
  SplitMix64 rng(derive_seed(cfg.seed, g.building_id()));

  std::vector<GuidePath> pool;
  std::size_t counter = 0;
  for (const RoomPath& rp : room_paths) {
    ConstrainedDigraph cd = build_constrained_digraph(g, rg, rp);
    for (int draw = 0; draw < cfg.draws_per_room_path; ++draw) {
      std::optional<GuidePath> gp = generate_candidate_path(g, cd, rng);
      if (!gp) continue;  // NoPath draws are dropped silently
      char buf[16];
      std::snprintf(buf, sizeof buf, "%06zu", counter++);
      gp->path_id = g.building_id() + "_" + buf;
      pool.push_back(std::move(*gp));
    }
  }
  return pool;
}

PathDataset sample_dataset(const std::vector<PanoGraph>& graphs,
                           const SamplerConfig& cfg) {
  if (graphs.empty()) throw Error("sample_dataset: no graphs");
  std::vector<GuidePath> pool;
  for (const PanoGraph& g : graphs) {
    std::vector<GuidePath> candidates = generate_candidates(g, cfg);
    pool.insert(pool.end(), std::make_move_iterator(candidates.begin()),
                std::make_move_iterator(candidates.end()));
  }
  if (pool.empty()) throw Error("sample_dataset: empty candidate pool");
  return greedy_select(std::move(pool), cfg.target, cfg.max_len_m,
                       cfg.max_per_building);
}

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Population standard deviation.
double stddev_of(const std::vector<double>& xs) {
  double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

}  // namespace

StatsReport dataset_stats(const PathDataset& ds,
                          const std::vector<PanoGraph>& graphs) {
  if (ds.paths.empty()) throw Error("dataset_stats: empty dataset");
  StatsReport r;
  r.count = ds.paths.size();

  std::vector<double> lengths, edges, detours;
  std::size_t non_shortest = 0;
  for (const GuidePath& p : ds.paths) {
    if (p.nodes.empty() || !(p.geodesic_m > 0.0)) {
      throw Error("dataset_stats: degenerate path " + p.path_id);
    }
    lengths.push_back(p.length_m);
    edges.push_back(static_cast<double>(p.nodes.size() - 1));
    r.length_m_hist.bins[static_cast<std::int64_t>(std::floor(p.length_m))] +=
        1;
    r.edges_hist.bins[static_cast<std::int64_t>(p.nodes.size() - 1)] += 1;
    if (p.length_m > p.geodesic_m + 1e-6) ++non_shortest;
    detours.push_back(100.0 * (p.length_m / p.geodesic_m - 1.0));
  }
  r.mean_length_m = mean_of(lengths);
  r.stddev_length_m = stddev_of(lengths);
  r.mean_edges = mean_of(edges);
  r.stddev_edges = stddev_of(edges);
  r.non_shortest_fraction =
      static_cast<double>(non_shortest) / static_cast<double>(r.count);
  r.mean_detour_pct = mean_of(detours);

  // Visit counts over every pano of the family, zeros included: uniform
  // coverage is a statement about the whole environment.
  std::vector<double> visits;
  for (const PanoGraph& g : graphs) {
    for (const PanoNode& n : g.nodes()) {
      auto it = ds.coverage.counts.find(n.id);
      std::int64_t c = it == ds.coverage.counts.end() ? 0 : it->second;
      visits.push_back(static_cast<double>(c));
      r.visit_hist.bins[c] += 1;
    }
  }
  if (visits.empty()) throw Error("dataset_stats: no graphs supplied");
  r.visit_stddev = stddev_of(visits);
  return r;
}

}  // namespace pathkit
