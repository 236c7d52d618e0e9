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

#include "pathkit/navgraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "pathkit/error.hpp"
#include "pathkit/rng.hpp"

#include "json.hpp"

namespace pathkit {

namespace {

bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

}  // namespace

PanoGraph::PanoGraph(
    std::string building_id, std::vector<PanoNode> nodes,
    const std::vector<std::pair<std::string, std::string>>& edges)
    : building_id_(std::move(building_id)), nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const PanoNode& a, const PanoNode& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const PanoNode& n = nodes_[i];
    if (i > 0 && n.id == nodes_[i - 1].id) {
      throw Error("duplicate node id: " + n.id);
    }
    if (n.id.empty()) throw Error("empty node id");
    if (n.room_id.empty()) throw Error("node " + n.id + " has no room_id");
    if (!finite(n.position)) {
      throw Error("node " + n.id + " has non-finite position");
    }
  }

  edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (!has_node(a)) throw Error("edge endpoint is not a node: " + a);
    if (!has_node(b)) throw Error("edge endpoint is not a node: " + b);
    std::size_t ia = index_of(a);
    std::size_t ib = index_of(b);
    if (ia == ib) throw Error("self-loop on node " + a);
    edges_.emplace_back(std::min(ia, ib), std::max(ia, ib));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adjacency_.assign(nodes_.size(), {});
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool PanoGraph::has_node(std::string_view id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const PanoNode& n, std::string_view v) { return n.id < v; });
  return it != nodes_.end() && it->id == id;
}

std::size_t PanoGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const PanoNode& n, std::string_view v) { return n.id < v; });
  if (it == nodes_.end() || it->id != id) {
    throw Error("unknown node id: " + std::string(id));
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool PanoGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

bool operator==(const PanoGraph& a, const PanoGraph& b) {
  return a.building_id_ == b.building_id_ && a.nodes_ == b.nodes_ &&
         a.edges_ == b.edges_;
}

namespace {

// Dijkstra from `src`; fills dist and predecessor arrays. Tie-breaking on
// equal keys is by node index, which is id order.
void dijkstra(const PanoGraph& g, std::size_t src, std::vector<double>& dist,
              std::vector<std::size_t>& prev) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  dist.assign(g.size(), kInf);
  prev.assign(g.size(), static_cast<std::size_t>(-1));
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (std::size_t v : g.neighbors(u)) {
      double nd = d + g.edge_length(u, v);
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        heap.emplace(nd, v);
      }
    }
  }
}

}  // namespace

std::optional<double> geodesic_distance(const PanoGraph& g,
                                        std::string_view from,
                                        std::string_view to) {
  std::size_t s = g.index_of(from);
  std::size_t t = g.index_of(to);
  if (s == t) return 0.0;
  std::vector<double> dist;
  std::vector<std::size_t> prev;
  dijkstra(g, s, dist, prev);
  if (!std::isfinite(dist[t])) return std::nullopt;
  return dist[t];
}

std::optional<std::vector<std::string>> geodesic_path(const PanoGraph& g,
                                                      std::string_view from,
                                                      std::string_view to) {
  std::size_t s = g.index_of(from);
  std::size_t t = g.index_of(to);
  std::vector<double> dist;
  std::vector<std::size_t> prev;
  dijkstra(g, s, dist, prev);
  if (!std::isfinite(dist[t])) return std::nullopt;
  std::vector<std::string> out;
  for (std::size_t v = t;; v = prev[v]) {
    out.push_back(g.node(v).id);
    if (v == s) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

double path_length(const PanoGraph& g, std::span<const std::string> nodes) {
  if (nodes.empty()) throw Error("path_length: empty node sequence");
  double total = 0.0;
  std::size_t prev = g.index_of(nodes[0]);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    std::size_t cur = g.index_of(nodes[i]);
    if (!g.adjacent(prev, cur)) {
      throw Error("path_length: " + nodes[i - 1] + " and " + nodes[i] +
                  " are not adjacent");
    }
    total += g.edge_length(prev, cur);
    prev = cur;
  }
  return total;
}

RoomGraph::RoomGraph(std::vector<RoomVertex> vertices,
                     std::vector<std::pair<std::size_t, std::size_t>> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  adjacency_.assign(vertices_.size(), {});
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (const std::string& p : vertices_[i].panos) {
      pano_to_vertex_.emplace_back(p, i);
    }
  }
  std::sort(pano_to_vertex_.begin(), pano_to_vertex_.end());
}

std::size_t RoomGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(
      vertices_.begin(), vertices_.end(), id,
      [](const RoomVertex& v, std::string_view s) { return v.id < s; });
  if (it == vertices_.end() || it->id != id) {
    throw Error("unknown room vertex: " + std::string(id));
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool RoomGraph::has_vertex(std::string_view id) const {
  auto it = std::lower_bound(
      vertices_.begin(), vertices_.end(), id,
      [](const RoomVertex& v, std::string_view s) { return v.id < s; });
  return it != vertices_.end() && it->id == id;
}

bool RoomGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::size_t RoomGraph::vertex_of_pano(std::string_view pano_id) const {
  auto it = std::lower_bound(
      pano_to_vertex_.begin(), pano_to_vertex_.end(), pano_id,
      [](const auto& entry, std::string_view v) { return entry.first < v; });
  if (it == pano_to_vertex_.end() || it->first != pano_id) return npos;
  return it->second;
}

RoomGraph build_room_graph(const PanoGraph& g) {
  // Group node indices by room annotation (map keeps room order sorted).
  std::map<std::string, std::vector<std::size_t>> rooms;
  for (std::size_t i = 0; i < g.size(); ++i) {
    rooms[g.node(i).room_id].push_back(i);
  }

  std::vector<RoomVertex> vertices;
  std::vector<std::size_t> node_component(g.size(),
                                          static_cast<std::size_t>(-1));
  for (const auto& [room_id, members] : rooms) {
    // BFS over edges that stay inside this room. Members are in index
    // order, so components come out ordered by smallest member pano id.
    std::vector<bool> seen(members.size(), false);
    std::map<std::size_t, std::size_t> member_pos;
    for (std::size_t k = 0; k < members.size(); ++k) {
      member_pos[members[k]] = k;
    }
    int component = 0;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (seen[k]) continue;
      std::vector<std::size_t> comp;
      std::queue<std::size_t> frontier;
      frontier.push(members[k]);
      seen[k] = true;
      while (!frontier.empty()) {
        std::size_t u = frontier.front();
        frontier.pop();
        comp.push_back(u);
        for (std::size_t v : g.neighbors(u)) {
          auto it = member_pos.find(v);
          if (it != member_pos.end() && !seen[it->second]) {
            seen[it->second] = true;
            frontier.push(v);
          }
        }
      }
      std::sort(comp.begin(), comp.end());

      RoomVertex vert;
      vert.id = room_id + "#" + std::to_string(component);
      vert.source_room_id = room_id;
      std::map<int, std::size_t> level_votes;
      for (std::size_t u : comp) {
        vert.panos.push_back(g.node(u).id);
        level_votes[g.node(u).level_id] += 1;
      }
      // Majority level; ties resolved toward the lowest level (map order).
      std::size_t best = 0;
      for (const auto& [level, votes] : level_votes) {
        if (votes > best) {
          best = votes;
          vert.level_id = level;
        }
      }
      std::size_t vid = vertices.size();
      for (std::size_t u : comp) node_component[u] = vid;
      vertices.push_back(std::move(vert));
      ++component;
    }
  }

  // Vertices must be sorted by id for RoomGraph lookups; remap components.
  std::vector<std::size_t> order(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return vertices[a].id < vertices[b].id;
  });
  std::vector<std::size_t> rank(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::vector<RoomVertex> sorted_vertices(vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted_vertices[i] = std::move(vertices[order[i]]);
  }
  for (auto& c : node_component) c = rank[c];

  std::vector<std::pair<std::size_t, std::size_t>> room_edges;
  for (const auto& [a, b] : g.edges()) {
    std::size_t ra = node_component[a];
    std::size_t rb = node_component[b];
    if (ra != rb) {
      room_edges.emplace_back(std::min(ra, rb), std::max(ra, rb));
    }
  }
  std::sort(room_edges.begin(), room_edges.end());
  room_edges.erase(std::unique(room_edges.begin(), room_edges.end()),
                   room_edges.end());

  return RoomGraph(std::move(sorted_vertices), std::move(room_edges));
}

PanoGraph generate_synthetic_house(const SynthSpec& spec) {
  if (spec.rooms_per_level < 1 || spec.panos_per_room < 1 || spec.levels < 1) {
    throw Error("synthetic house: all counts must be >= 1");
  }
  if (!(spec.spacing_m > 0.0)) {
    throw Error("synthetic house: spacing must be > 0");
  }
  SplitMix64 rng(derive_seed(spec.seed, "synth-house"));

  const std::string building = spec.building_id.empty()
                                   ? "synth-" + std::to_string(spec.seed)
                                   : spec.building_id;
  const double s = spec.spacing_m;
  const int room_cols = static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(spec.rooms_per_level))));
  const int pano_cols = static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(spec.panos_per_room))));
  const int pano_rows =
      (spec.panos_per_room + pano_cols - 1) / pano_cols;
  // Room pitch leaves one spacing unit of corridor between room grids.
  const double pitch_x = (pano_cols + 1) * s;
  const double pitch_y = (pano_rows + 1) * s;
  const double level_height = 3.0;

  int digits = 1;
  for (int n = spec.rooms_per_level * spec.levels * spec.panos_per_room;
       n >= 10; n /= 10) {
    ++digits;
  }
  auto pad = [digits](int value) {
    std::string t = std::to_string(value);
    return std::string(static_cast<std::size_t>(digits) > t.size()
                           ? digits - t.size()
                           : 0,
                       '0') +
           t;
  };

  std::vector<PanoNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  // pano id at (level, room, k) — rooms fill their grid row-major.
  auto pano_id = [&](int level, int room, int k) {
    int global =
        (level * spec.rooms_per_level + room) * spec.panos_per_room + k;
    return "p" + pad(global);
  };

  for (int level = 0; level < spec.levels; ++level) {
    for (int room = 0; room < spec.rooms_per_level; ++room) {
      int gr = room / room_cols;
      int gc = room % room_cols;
      std::string room_id =
          "room_" + pad(level * spec.rooms_per_level + room);
      for (int k = 0; k < spec.panos_per_room; ++k) {
        int pr = k / pano_cols;
        int pc = k % pano_cols;
        PanoNode n;
        n.id = pano_id(level, room, k);
        n.room_id = room_id;
        n.level_id = level;
        double jx = (rng.next_unit() - 0.5) * 0.3 * s;
        double jy = (rng.next_unit() - 0.5) * 0.3 * s;
        double jz = (rng.next_unit() - 0.5) * 0.1;
        n.position = {gc * pitch_x + pc * s + jx, gr * pitch_y + pr * s + jy,
                      level * level_height + jz};
        nodes.push_back(std::move(n));

        // 4-neighborhood inside the room keeps each room connected.
        if (pc > 0) edges.emplace_back(pano_id(level, room, k - 1), nodes.back().id);
        if (pr > 0 && k - pano_cols >= 0) {
          edges.emplace_back(pano_id(level, room, k - pano_cols),
                             nodes.back().id);
        }
      }
    }
  }

  // Door between grid-adjacent rooms on the same level: join the pano pair
  // with the smallest Euclidean gap.
  auto room_grid_index = [&](int gr, int gc) { return gr * room_cols + gc; };
  auto closest_pair = [&](int level_a, int room_a, int level_b, int room_b) {
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0, best_j = 0;
    for (int i = 0; i < spec.panos_per_room; ++i) {
      for (int j = 0; j < spec.panos_per_room; ++j) {
        // Node vector is in generation order here, not yet sorted.
        const Vec3& pa =
            nodes[(level_a * spec.rooms_per_level + room_a) *
                      spec.panos_per_room +
                  i]
                .position;
        const Vec3& pb =
            nodes[(level_b * spec.rooms_per_level + room_b) *
                      spec.panos_per_room +
                  j]
                .position;
        double d = distance(pa, pb);
        if (d < best) {
          best = d;
          best_i = i;
          best_j = j;
        }
      }
    }
    edges.emplace_back(pano_id(level_a, room_a, best_i),
                       pano_id(level_b, room_b, best_j));
  };

  for (int level = 0; level < spec.levels; ++level) {
    for (int room = 0; room < spec.rooms_per_level; ++room) {
      int gr = room / room_cols;
      int gc = room % room_cols;
      if (gc + 1 < room_cols &&
          room_grid_index(gr, gc + 1) < spec.rooms_per_level) {
        closest_pair(level, room, level, room_grid_index(gr, gc + 1));
      }
      int below = room_grid_index(gr + 1, gc);
      if (below < spec.rooms_per_level) {
        closest_pair(level, room, level, below);
      }
    }
    // Stairwell: first room of each level connects to the one above.
    if (level + 1 < spec.levels) closest_pair(level, 0, level + 1, 0);
  }

  return PanoGraph(building, std::move(nodes), edges);
}

namespace {

using nlohmann::json;

PanoGraph pano_graph_from_json(const json& doc) {
  if (!doc.is_object()) throw Error("graph document is not a JSON object");
  if (!doc.contains("building_id") || !doc["building_id"].is_string()) {
    throw Error("graph document missing building_id");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw Error("graph document missing nodes array");
  }
  std::vector<PanoNode> nodes;
  for (const json& jn : doc["nodes"]) {
    PanoNode n;
    if (!jn.contains("id") || !jn["id"].is_string()) {
      throw Error("node missing id");
    }
    n.id = jn["id"].get<std::string>();
    if (!jn.contains("position") || !jn["position"].is_array() ||
        jn["position"].size() != 3) {
      throw Error("node " + n.id + " missing 3-element position");
    }
    n.position = {jn["position"][0].get<double>(),
                  jn["position"][1].get<double>(),
                  jn["position"][2].get<double>()};
    if (!jn.contains("room_id") || !jn["room_id"].is_string()) {
      throw Error("node " + n.id + " missing room_id");
    }
    n.room_id = jn["room_id"].get<std::string>();
    if (!jn.contains("level_id") || !jn["level_id"].is_number_integer()) {
      throw Error("node " + n.id + " missing level_id");
    }
    n.level_id = jn["level_id"].get<int>();
    nodes.push_back(std::move(n));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw Error("edges is not an array");
    for (const json& je : doc["edges"]) {
      if (!je.is_array() || je.size() != 2 || !je[0].is_string() ||
          !je[1].is_string()) {
        throw Error("edge entries must be [id, id] pairs");
      }
      edges.emplace_back(je[0].get<std::string>(), je[1].get<std::string>());
    }
  }
  return PanoGraph(doc["building_id"].get<std::string>(), std::move(nodes),
                   edges);
}

}  // namespace

PanoGraph load_pano_graph(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(std::string("graph parse error: ") + e.what());
  }
  return pano_graph_from_json(doc);
}

PanoGraph load_pano_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  return load_pano_graph(in);
}

std::string pano_graph_to_json(const PanoGraph& g) {
  nlohmann::ordered_json doc;
  doc["building_id"] = g.building_id();
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const PanoNode& n : g.nodes()) {
    nlohmann::ordered_json jn;
    jn["id"] = n.id;
    jn["position"] = {n.position.x, n.position.y, n.position.z};
    jn["room_id"] = n.room_id;
    jn["level_id"] = n.level_id;
    doc["nodes"].push_back(std::move(jn));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : g.edges()) {
    doc["edges"].push_back({g.node(a).id, g.node(b).id});
  }
  return doc.dump(2) + "\n";
}

}  // namespace pathkit
