// SPDX-License-Identifier: Apache-2.0
//
// wavecopy: wavefront copying through programmable wireless environments
// Copyright (C) 2026 The wavecopy authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "wavecopy/em.hpp"
#include "wavecopy/scene.hpp"
#include "wavecopy/sdm.hpp"

#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace wcopy {

struct GraphNode {
    std::string id;
    Vec3 position;
    bool relay{false};            // tiles may appear inside a route; endpoints may not
    Vec3 normal;                  // tiles only: edges must leave through the front face
    std::set<std::string> own;    // rectangles ignored when testing this node's edges
};

/// Undirected LoS graph. Node order is sorted by id so all tie-breaks are stable.
class PweGraph {
public:
    static constexpr double kNoEdge = std::numeric_limits<double>::infinity();

    void add_node(GraphNode node);
    void set_edge(const std::string& a, const std::string& b, double w);
    void clear_edges_of(const std::string& id);
    void remove_node(const std::string& id);

    int index_of(const std::string& id) const; // -1 if absent
    const GraphNode& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
    GraphNode& node(int i) { return nodes_[static_cast<size_t>(i)]; }
    int size() const { return static_cast<int>(nodes_.size()); }
    double weight(int a, int b) const { return w_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
    bool has_edge(int a, int b) const { return weight(a, b) != kNoEdge; }
    std::vector<std::tuple<std::string, std::string, double>> edges() const;

private:
    std::vector<GraphNode> nodes_;
    std::vector<std::vector<double>> w_;
};

struct WaveRoute {
    std::vector<std::string> nodes;
    double length{0.0};
    int hops() const { return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1; }
    friend bool operator==(const WaveRoute&, const WaveRoute&) = default;
};

struct CopyCommand {
    std::string src;
    std::string dst;
    std::string group;
};

struct TileCallback {
    std::string tile;
    Callback callback;
};

struct ChannelPrediction {
    double focal_magnitude{0.0};      // quantized deployment, l2 norm over probes
    double continuous_magnitude{0.0}; // ideal continuous phases
    double fidelity{0.0};             // focal / continuous, clipped to [0, 1]
    int hops{0};
    double path_length{0.0};
};

inline constexpr int kDefaultMaxHops = 4;

/// Nodes: tiles (relays), objects (pivot), arrays (centroid), declared endpoints.
PweGraph build_graph(const RoomScene& scene);

/// Re-evaluates one node's edges after its position changed.
void refresh_node_edges(PweGraph& graph, const RoomScene& scene, const std::string& id);

/// Exact hop-bounded shortest path; equal lengths resolve to the lexicographically
/// smallest node-id sequence. Intermediate nodes are relays only. Throws NoRoute.
WaveRoute route(const PweGraph& graph, const std::string& src, const std::string& dst,
                int max_hops = kDefaultMaxHops, const std::set<int>& banned = {});

/// Node-disjoint routes (no shared intermediate) via sequential routing with removal,
/// tried in command order and in reverse order; the shorter feasible total wins.
/// Throws Infeasible if neither order serves every command.
std::vector<WaveRoute> route_disjoint(const PweGraph& graph, const std::vector<CopyCommand>& commands,
                                      int max_hops = kDefaultMaxHops);

/// FOCUS(previous hop point, next hop point) for every intermediate tile.
std::vector<TileCallback> compile_route(const WaveRoute& route, const PweGraph& graph);

/// Applies callbacks through the codebooks (or as ideal phases when `continuous`);
/// every other tile is set to ABSORB. Throws UnknownTile.
RoomScene deploy(const RoomScene& scene, const std::vector<TileCallback>& callbacks, double k,
                 bool continuous = false);

ChannelPrediction predict_channel(const RoomScene& scene, const std::vector<TileCallback>& callbacks,
                                  const std::vector<Vec3>& probes, const PropagationConfig& cfg);

struct RerouteResult {
    PweGraph graph;
    std::vector<WaveRoute> routes;
};

/// Moves an endpoint, rebuilds its edges and repairs the affected routes; falls back to a
/// full disjoint re-solve when the repaired set is not disjoint. Throws Infeasible.
RerouteResult reroute(const PweGraph& graph, const RoomScene& scene, const std::vector<CopyCommand>& commands,
                      const std::vector<WaveRoute>& routes, const std::string& moved, const Vec3& new_position,
                      int max_hops = kDefaultMaxHops);

struct ReplicaDeployment {
    RoomScene scene;                       // destination scene, mapped tiles set to ABSORB
    std::vector<InjectedSurface> surfaces; // resynthesized departing wavefronts
};

/// Senses the departing wavefront (gamma * incident) on each mapped tile of scene1 and
/// re-emits it from the congruent tile of scene2. Throws LayoutMismatch.
ReplicaDeployment replicate_by_sensing(const RoomScene& scene1, const RoomScene& scene2,
                                       const std::map<std::string, std::string>& tile_map,
                                       const PropagationConfig& cfg);

} // namespace wcopy
