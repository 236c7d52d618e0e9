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

#ifndef PATHKIT_NAVGRAPH_HPP_
#define PATHKIT_NAVGRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathkit/geometry.hpp"

namespace pathkit {

struct PanoNode {
  std::string id;
  Vec3 position;        // meters
  std::string room_id;  // every pano carries a room annotation
  int level_id = 0;

  friend bool operator==(const PanoNode&, const PanoNode&) = default;
};

/// Undirected panorama navigation graph. Nodes are stored sorted by id and
/// addressed by dense index; all iteration orders are deterministic.
/// Immutable after construction and safe for concurrent reads.
class PanoGraph {
 public:
  /// Validates and builds. Edges are given as unordered id pairs.
  /// Rejects duplicate node ids, dangling endpoints, self-loops, empty
  /// room ids and non-finite positions.
  PanoGraph(std::string building_id, std::vector<PanoNode> nodes,
            const std::vector<std::pair<std::string, std::string>>& edges);

  const std::string& building_id() const { return building_id_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Nodes sorted ascending by id; index order equals id order.
  const std::vector<PanoNode>& nodes() const { return nodes_; }
  const PanoNode& node(std::size_t index) const { return nodes_[index]; }

  bool has_node(std::string_view id) const;
  /// Throws Error on unknown id.
  std::size_t index_of(std::string_view id) const;
  const PanoNode& node(std::string_view id) const {
    return nodes_[index_of(id)];
  }

  /// Unordered edges as index pairs (first < second), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }
  /// Neighbor indices of a node, sorted ascending (i.e. by node id).
  const std::vector<std::size_t>& neighbors(std::size_t index) const {
    return adjacency_[index];
  }
  bool adjacent(std::size_t a, std::size_t b) const;

  double edge_length(std::size_t a, std::size_t b) const {
    return distance(nodes_[a].position, nodes_[b].position);
  }

  friend bool operator==(const PanoGraph&, const PanoGraph&);

 private:
  std::string building_id_;
  std::vector<PanoNode> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Shortest-path distance in meters between two panos, with Euclidean edge
/// weights. Disconnected pairs yield nullopt (a value, not an error, so
/// samplers can probe connectivity cheaply). Unknown ids throw Error.
std::optional<double> geodesic_distance(const PanoGraph& g,
                                        std::string_view from,
                                        std::string_view to);

/// A witness node sequence realizing geodesic_distance, or nullopt if
/// disconnected. Deterministic (ties broken by node index).
std::optional<std::vector<std::string>> geodesic_path(const PanoGraph& g,
                                                      std::string_view from,
                                                      std::string_view to);

/// Sum of Euclidean edge lengths along a node sequence. A single node has
/// length 0. Throws Error if a consecutive pair is not an edge.
double path_length(const PanoGraph& g, std::span<const std::string> nodes);

/// One vertex of the room graph: a connected component of the subgraph
/// induced by one room annotation.
struct RoomVertex {
  std::string id;              // "<source_room_id>#<component index>"
  std::string source_room_id;
  int level_id = 0;            // majority level of member panos, ties lowest
  std::vector<std::string> panos;  // sorted

  friend bool operator==(const RoomVertex&, const RoomVertex&) = default;
};

/// Graph over room components. Vertices sorted by id; immutable.
class RoomGraph {
 public:
  RoomGraph(std::vector<RoomVertex> vertices,
            std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<RoomVertex>& vertices() const { return vertices_; }
  const RoomVertex& vertex(std::size_t index) const {
    return vertices_[index];
  }
  std::size_t index_of(std::string_view id) const;
  bool has_vertex(std::string_view id) const;

  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }
  const std::vector<std::size_t>& neighbors(std::size_t index) const {
    return adjacency_[index];
  }
  bool adjacent(std::size_t a, std::size_t b) const;

  /// Index of the room vertex containing a pano, or npos if the pano id is
  /// not a member of any vertex.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t vertex_of_pano(std::string_view pano_id) const;

 private:
  std::vector<RoomVertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::string, std::size_t>> pano_to_vertex_;  // sorted
};

/// Builds the room graph: one vertex per connected component of each
/// room-induced subgraph; an edge joins two vertices iff some pano edge
/// joins their member sets. Component indices are ordered by smallest
/// member pano id, so vertex ids are deterministic.
RoomGraph build_room_graph(const PanoGraph& g);

/// Parameters for the synthetic desk-scale house generator.
struct SynthSpec {
  int rooms_per_level = 6;
  int panos_per_room = 5;
  int levels = 1;
  double spacing_m = 2.2;
  std::uint64_t seed = 0;
  std::string building_id;  // defaults to "synth-<seed>"
};

/// Deterministic synthetic house. Rooms sit on a per-level grid, panos on a
/// jittered grid inside each room; room-induced subgraphs are connected,
/// grid-adjacent rooms share at least one edge, levels are joined through
/// their first rooms, and the whole graph is connected.
PanoGraph generate_synthetic_house(const SynthSpec& spec);

// JSON graph document:
// {"building_id": str,
//  "nodes": [{"id": str, "position": [x,y,z], "room_id": str,
//             "level_id": int}],
//  "edges": [[id, id], ...]}
PanoGraph load_pano_graph(std::istream& in);
PanoGraph load_pano_graph_file(const std::string& path);
std::string pano_graph_to_json(const PanoGraph& g);

}  // namespace pathkit

#endif  // PATHKIT_NAVGRAPH_HPP_
