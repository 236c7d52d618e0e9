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

#ifndef PATHKIT_SAMPLER_HPP_
#define PATHKIT_SAMPLER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathkit/navgraph.hpp"
#include "pathkit/rng.hpp"

namespace pathkit {

/// A simple (no repeated vertex) path in the room graph; the coarse layer
/// the panorama-level sampler is constrained by. Vertices are RoomGraph
/// vertex ids in visit order.
struct RoomPath {
  std::vector<std::string> vertices;

  friend bool operator==(const RoomPath&, const RoomPath&) = default;
  friend bool operator<(const RoomPath& a, const RoomPath& b) {
    return a.vertices < b.vertices;
  }
};

/// All simple room paths of 1..max_rooms vertices touching at most
/// max_levels distinct building levels. Both orientations of each
/// undirected traversal are enumerated (direction matters downstream).
/// Output is sorted lexicographically by vertex-id sequence.
std::vector<RoomPath> enumerate_room_paths(const RoomGraph& rg, int max_rooms,
                                           int max_levels);

/// The panorama subgraph induced by a room path, oriented: edges within one
/// room keep both directions, edges between consecutive rooms of the path
/// keep only the forward direction, every other pano edge is dropped.
/// Arcs index into member_panos (which is sorted).
struct ConstrainedDigraph {
  RoomPath room_path;
  std::vector<std::string> member_panos;
  std::vector<std::vector<std::size_t>> out_arcs;  // per member, sorted
  // Sorted pano ids of each room along room_path, for start/goal draws.
  std::vector<std::vector<std::string>> room_members;

  std::size_t index_of(const std::string& pano_id) const;
  bool has_arc(std::size_t from, std::size_t to) const;
  std::size_t arc_count() const;
};

ConstrainedDigraph build_constrained_digraph(const PanoGraph& g,
                                             const RoomGraph& rg,
                                             const RoomPath& rp);

/// One sampled guide path: a shortest panorama path under a room-path
/// constraint, with its provenance and cached lengths.
struct GuidePath {
  std::string path_id;
  std::string building_id;
  std::vector<std::string> nodes;
  std::vector<std::string> room_path;
  double length_m = 0.0;    // path length in the full graph
  double geodesic_m = 0.0;  // unconstrained start->goal geodesic

  friend bool operator==(const GuidePath&, const GuidePath&) = default;
};

/// Draws start uniformly from the first room's panos and goal from the last
/// room's, then returns the minimum-weight directed path between them in
/// the constrained digraph. NoPath (nullopt) if start == goal or the goal
/// is unreachable. path_id is left empty; the pipeline assigns ids.
std::optional<GuidePath> generate_candidate_path(const PanoGraph& g,
                                                 const ConstrainedDigraph& cd,
                                                 SplitMix64& rng);

/// Running tally of panorama occurrences over the selected paths.
struct CoverageState {
  std::map<std::string, std::int64_t> counts;          // pano id -> visits
  std::map<std::string, std::size_t> per_building;     // building -> paths

  void add(const GuidePath& path);
};

/// Greedy objective: geodesic/length ratio plus mean coverage count over
/// the path's nodes. Lower is better; the ratio term prefers non-shortest
/// paths, the coverage term prefers rarely visited panoramas.
double selection_objective(const GuidePath& cand, const CoverageState& cov);

struct PathDataset {
  std::vector<GuidePath> paths;  // selection order
  CoverageState coverage;
  std::size_t requested = 0;     // target size; shortfall = requested - size
};

/// Iteratively removes from the pool the eligible candidate minimizing
/// selection_objective (ties by ascending path_id). Candidates longer than
/// max_len_m or from a building at its cap are skipped. May return fewer
/// than target_size paths when the pool runs dry.
PathDataset greedy_select(std::vector<GuidePath> candidates,
                          std::size_t target_size, double max_len_m = 40.0,
                          std::size_t max_per_building = 500);

struct SamplerConfig {
  int max_rooms = 5;
  int max_levels = 2;
  int draws_per_room_path = 1;
  double max_len_m = 40.0;
  std::size_t max_per_building = 500;
  std::size_t target = 1;
  std::uint64_t seed = 0;
};

/// The candidate pool for one building: one (start, goal) draw per room
/// path per configured round, NoPath draws dropped. Seeded per building so
/// buildings can be processed concurrently and in any order.
std::vector<GuidePath> generate_candidates(const PanoGraph& g,
                                           const SamplerConfig& cfg);

/// Full two-level pipeline over a building family: enumerate, generate,
/// select.
PathDataset sample_dataset(const std::vector<PanoGraph>& graphs,
                           const SamplerConfig& cfg);

struct Histogram {
  std::map<std::int64_t, std::size_t> bins;
};

struct StatsReport {
  std::size_t count = 0;
  double mean_length_m = 0.0;
  double stddev_length_m = 0.0;
  double mean_edges = 0.0;
  double stddev_edges = 0.0;
  Histogram length_m_hist;  // 1 m bins (floor of meters)
  Histogram edges_hist;
  Histogram visit_hist;     // visit count -> number of panos
  double visit_stddev = 0.0;  // over all panos of the family, zeros included
  double non_shortest_fraction = 0.0;
  double mean_detour_pct = 0.0;
};

/// Length, coverage and detour statistics for a selected dataset. Graphs
/// must cover every building referenced by the paths.
StatsReport dataset_stats(const PathDataset& ds,
                          const std::vector<PanoGraph>& graphs);

}  // namespace pathkit

#endif  // PATHKIT_SAMPLER_HPP_
