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

#include "wavecopy/pwe.hpp"

#include "wavecopy/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace wcopy {

void PweGraph::add_node(GraphNode node)
{
    if (index_of(node.id) >= 0)
        fail(Errc::Validation, "duplicate graph node '" + node.id + "'");
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node.id,
                               [](const GraphNode& n, const std::string& id) { return n.id < id; });
    const size_t pos = static_cast<size_t>(it - nodes_.begin());
    nodes_.insert(it, std::move(node));
    for (auto& row : w_)
        row.insert(row.begin() + static_cast<long>(pos), kNoEdge);
    w_.insert(w_.begin() + static_cast<long>(pos), std::vector<double>(nodes_.size(), kNoEdge));
}

void PweGraph::set_edge(const std::string& a, const std::string& b, double w)
{
    const int i = index_of(a), j = index_of(b);
    if (i < 0 || j < 0)
        fail(Errc::UnknownNode, "edge references an unknown node");
    if (i == j || !(w > 0.0))
        fail(Errc::Validation, "edges need distinct endpoints and a positive weight");
    w_[static_cast<size_t>(i)][static_cast<size_t>(j)] = w;
    w_[static_cast<size_t>(j)][static_cast<size_t>(i)] = w;
}

void PweGraph::clear_edges_of(const std::string& id)
{
    const int i = index_of(id);
    if (i < 0)
        fail(Errc::UnknownNode, "unknown node '" + id + "'");
    for (size_t j = 0; j < nodes_.size(); ++j) {
        w_[static_cast<size_t>(i)][j] = kNoEdge;
        w_[j][static_cast<size_t>(i)] = kNoEdge;
    }
}

void PweGraph::remove_node(const std::string& id)
{
    const int i = index_of(id);
    if (i < 0)
        fail(Errc::UnknownNode, "unknown node '" + id + "'");
    nodes_.erase(nodes_.begin() + i);
    w_.erase(w_.begin() + i);
    for (auto& row : w_)
        row.erase(row.begin() + i);
}

int PweGraph::index_of(const std::string& id) const
{
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const GraphNode& n, const std::string& key) { return n.id < key; });
    return (it != nodes_.end() && it->id == id) ? static_cast<int>(it - nodes_.begin()) : -1;
}

std::vector<std::tuple<std::string, std::string, double>> PweGraph::edges() const
{
    std::vector<std::tuple<std::string, std::string, double>> out;
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (has_edge(i, j))
                out.emplace_back(nodes_[static_cast<size_t>(i)].id, nodes_[static_cast<size_t>(j)].id, weight(i, j));
    return out;
}

namespace {

bool edge_ok(const GraphNode& a, const GraphNode& b, const RoomScene& scene)
{
    if (distance(a.position, b.position) <= 1e-12)
        return false;
    if (a.relay && !(dot(b.position - a.position, a.normal) > 1e-9))
        return false;
    if (b.relay && !(dot(a.position - b.position, b.normal) > 1e-9))
        return false;
    std::set<std::string> ex = a.own;
    ex.insert(b.own.begin(), b.own.end());
    return los_visible(a.position, b.position, scene, ex);
}

} // namespace

PweGraph build_graph(const RoomScene& scene)
{
    PweGraph g;
    for (const auto& t : scene.tiles)
        g.add_node(GraphNode{t.id, t.placement.center, true, t.placement.normal, {t.id}});
    for (const auto& o : scene.objects) {
        GraphNode n{o.id, o.pivot, false, {}, {}};
        for (const auto& r : o.rects)
            n.own.insert(r.id);
        g.add_node(std::move(n));
    }
    for (const auto& a : scene.arrays)
        g.add_node(GraphNode{a.id, a.centroid(), false, {}, {}});
    for (const auto& e : scene.endpoints)
        g.add_node(GraphNode{e.id, e.position, false, {}, {}});
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j)
            if (edge_ok(g.node(i), g.node(j), scene))
                g.set_edge(g.node(i).id, g.node(j).id, distance(g.node(i).position, g.node(j).position));
    return g;
}

void refresh_node_edges(PweGraph& graph, const RoomScene& scene, const std::string& id)
{
    graph.clear_edges_of(id);
    const int i = graph.index_of(id);
    for (int j = 0; j < graph.size(); ++j)
        if (j != i && edge_ok(graph.node(i), graph.node(j), scene))
            graph.set_edge(id, graph.node(j).id, distance(graph.node(i).position, graph.node(j).position));
}

WaveRoute route(const PweGraph& graph, const std::string& src, const std::string& dst, int max_hops,
                const std::set<int>& banned)
{
    const int s = graph.index_of(src), t = graph.index_of(dst);
    if (s < 0 || t < 0)
        fail(Errc::UnknownNode, "route endpoint '" + (s < 0 ? src : dst) + "' is not in the graph");
    if (s == t)
        fail(Errc::Validation, "route source and destination coincide");
    struct Label {
        double len;
        std::vector<int> path;
    };
    auto better = [](const Label& a, const std::optional<Label>& b) {
        return !b || a.len < b->len || (a.len == b->len && a.path < b->path);
    };
    const int n = graph.size();
    std::vector<std::optional<Label>> cur(static_cast<size_t>(n));
    cur[static_cast<size_t>(s)] = Label{0.0, {s}};
    for (int h = 1; h <= max_hops; ++h) {
        auto next = cur;
        for (int u = 0; u < n; ++u) {
            const auto& lu = cur[static_cast<size_t>(u)];
            if (!lu || u == t)
                continue;
            if (u != s && (!graph.node(u).relay || banned.count(u)))
                continue;
            for (int v = 0; v < n; ++v) {
                if (!graph.has_edge(u, v) || std::find(lu->path.begin(), lu->path.end(), v) != lu->path.end())
                    continue;
                Label cand{lu->len + graph.weight(u, v), lu->path};
                cand.path.push_back(v);
                if (better(cand, next[static_cast<size_t>(v)]))
                    next[static_cast<size_t>(v)] = std::move(cand);
            }
        }
        cur = std::move(next);
    }
    const auto& best = cur[static_cast<size_t>(t)];
    if (!best)
        fail(Errc::NoRoute, "no route from '" + src + "' to '" + dst + "' within " + std::to_string(max_hops) + " hops");
    WaveRoute r;
    r.length = best->len;
    for (int i : best->path)
        r.nodes.push_back(graph.node(i).id);
    return r;
}

namespace {

std::optional<std::vector<WaveRoute>> sequential(const PweGraph& graph, const std::vector<CopyCommand>& cmds,
                                                 const std::vector<size_t>& order, int max_hops)
{
    std::set<int> banned;
    for (const auto& c : cmds) {
        banned.insert(graph.index_of(c.src));
        banned.insert(graph.index_of(c.dst));
    }
    std::vector<WaveRoute> out(cmds.size());
    for (size_t i : order) {
        try {
            out[i] = route(graph, cmds[i].src, cmds[i].dst, max_hops, banned);
        } catch (const Error& e) {
            if (e.code() == Errc::NoRoute)
                return std::nullopt;
            throw;
        }
        for (size_t k = 1; k + 1 < out[i].nodes.size(); ++k)
            banned.insert(graph.index_of(out[i].nodes[k]));
    }
    return out;
}

double total_length(const std::vector<WaveRoute>& routes)
{
    double s = 0.0;
    for (const auto& r : routes)
        s += r.length;
    return s;
}

} // namespace

std::vector<WaveRoute> route_disjoint(const PweGraph& graph, const std::vector<CopyCommand>& commands, int max_hops)
{
    if (commands.empty())
        fail(Errc::Validation, "route_disjoint needs at least one command");
    for (const auto& c : commands)
        if (graph.index_of(c.src) < 0 || graph.index_of(c.dst) < 0)
            fail(Errc::UnknownNode, "command endpoint is not in the graph");
    std::vector<size_t> order(commands.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    auto fwd = sequential(graph, commands, order, max_hops);
    std::reverse(order.begin(), order.end());
    auto rev = commands.size() > 1 ? sequential(graph, commands, order, max_hops) : std::nullopt;
    if (!fwd && !rev)
        fail(Errc::Infeasible, "commands cannot be served by disjoint routes");
    if (fwd && rev)
        return total_length(*rev) < total_length(*fwd) ? *rev : *fwd;
    return fwd ? *fwd : *rev;
}

std::vector<TileCallback> compile_route(const WaveRoute& r, const PweGraph& graph)
{
    std::vector<TileCallback> out;
    for (size_t i = 1; i + 1 < r.nodes.size(); ++i) {
        const int prev = graph.index_of(r.nodes[i - 1]), cur = graph.index_of(r.nodes[i]),
                  next = graph.index_of(r.nodes[i + 1]);
        if (prev < 0 || cur < 0 || next < 0)
            fail(Errc::UnknownNode, "route references a node missing from the graph");
        if (!graph.node(cur).relay)
            fail(Errc::Validation, "route passes through non-tile node '" + r.nodes[i] + "'");
        out.push_back(TileCallback{r.nodes[i], Callback::focus(graph.node(prev).position, graph.node(next).position)});
    }
    return out;
}

namespace {

TileDeployment absorb_deployment(const SdmTile& tile, const Codebook& book)
{
    if (book.absorb_state < 0)
        fail(Errc::UnsupportedCallback, "codebook '" + book.id + "' has no ABSORB state");
    return deployment_from_states(std::vector<int>(static_cast<size_t>(tile.cell_count()), book.absorb_state), book);
}

double phase_magnitude(const Codebook& book)
{
    double m = 0.0;
    for (int s : book.phase_states())
        m = std::max(m, std::abs(book.gamma[static_cast<size_t>(s)]));
    return m;
}

double l2(const std::vector<Complex>& v)
{
    double s = 0.0;
    for (const auto& c : v)
        s += std::norm(c);
    return std::sqrt(s);
}

} // namespace

RoomScene deploy(const RoomScene& scene, const std::vector<TileCallback>& callbacks, double k, bool continuous)
{
    RoomScene out = scene;
    for (auto& t : out.tiles)
        t.deployment = absorb_deployment(t, out.codebook_for(t));
    std::set<std::string> seen;
    for (const auto& tc : callbacks) {
        SdmTile* tile = out.find_tile(tc.tile);
        if (!tile)
            fail(Errc::UnknownTile, "unknown tile '" + tc.tile + "'");
        if (!seen.insert(tc.tile).second)
            fail(Errc::Validation, "tile '" + tc.tile + "' receives more than one callback");
        const Codebook& book = out.codebook_for(*tile);
        if (continuous) {
            auto profile = callback_profile(tc.callback, *tile, k);
            tile->deployment = profile ? continuous_deployment(*profile, phase_magnitude(book))
                                       : absorb_deployment(*tile, book);
        } else {
            tile->deployment = deployment_from_states(codebook_lookup(tc.callback, *tile, book, k), book);
        }
    }
    return out;
}

ChannelPrediction predict_channel(const RoomScene& scene, const std::vector<TileCallback>& callbacks,
                                  const std::vector<Vec3>& probes, const PropagationConfig& cfg)
{
    ChannelPrediction p;
    p.focal_magnitude = l2(compute_field(deploy(scene, callbacks, cfg.k, false), cfg, probes));
    p.continuous_magnitude = l2(compute_field(deploy(scene, callbacks, cfg.k, true), cfg, probes));
    if (p.continuous_magnitude > 0.0)
        p.fidelity = std::min(1.0, p.focal_magnitude / p.continuous_magnitude);
    else
        p.fidelity = p.focal_magnitude == 0.0 ? 1.0 : 0.0;

    std::vector<const TileCallback*> chain;
    for (const auto& tc : callbacks)
        if (tc.callback.kind == CallbackKind::Focus)
            chain.push_back(&tc);
    if (!chain.empty()) {
        p.hops = static_cast<int>(chain.size()) + 1;
        std::vector<Vec3> centers;
        for (const auto* tc : chain)
            centers.push_back(scene.find_tile(tc->tile)->placement.center);
        p.path_length = distance(chain.front()->callback.source_point, centers.front()) +
                        distance(centers.back(), chain.back()->callback.focal_point);
        for (size_t i = 0; i + 1 < centers.size(); ++i)
            p.path_length += distance(centers[i], centers[i + 1]);
    }
    return p;
}

RerouteResult reroute(const PweGraph& graph, const RoomScene& scene, const std::vector<CopyCommand>& commands,
                      const std::vector<WaveRoute>& routes, const std::string& moved, const Vec3& new_position,
                      int max_hops)
{
    if (routes.size() != commands.size())
        fail(Errc::Validation, "reroute needs one existing route per command");
    RerouteResult res{graph, routes};
    const int mi = res.graph.index_of(moved);
    if (mi < 0)
        fail(Errc::UnknownNode, "unknown endpoint '" + moved + "'");
    res.graph.node(mi).position = new_position;
    refresh_node_edges(res.graph, scene, moved);

    std::set<int> banned;
    for (const auto& c : commands) {
        banned.insert(res.graph.index_of(c.src));
        banned.insert(res.graph.index_of(c.dst));
    }
    std::vector<size_t> affected;
    for (size_t i = 0; i < routes.size(); ++i) {
        const bool hit = std::find(routes[i].nodes.begin(), routes[i].nodes.end(), moved) != routes[i].nodes.end();
        if (hit) {
            affected.push_back(i);
        } else {
            for (size_t k = 1; k + 1 < routes[i].nodes.size(); ++k)
                banned.insert(res.graph.index_of(routes[i].nodes[k]));
        }
    }
    bool repaired = true;
    for (size_t i : affected) {
        try {
            res.routes[i] = route(res.graph, commands[i].src, commands[i].dst, max_hops, banned);
        } catch (const Error& e) {
            if (e.code() != Errc::NoRoute)
                throw;
            repaired = false;
            break;
        }
        for (size_t k = 1; k + 1 < res.routes[i].nodes.size(); ++k)
            banned.insert(res.graph.index_of(res.routes[i].nodes[k]));
    }
    if (!repaired)
        res.routes = route_disjoint(res.graph, commands, max_hops);
    return res;
}

ReplicaDeployment replicate_by_sensing(const RoomScene& scene1, const RoomScene& scene2,
                                       const std::map<std::string, std::string>& tile_map,
                                       const PropagationConfig& cfg)
{
    std::vector<std::pair<const SdmTile*, const SdmTile*>> pairs;
    for (const auto& [a, b] : tile_map) {
        const SdmTile* t1 = scene1.find_tile(a);
        const SdmTile* t2 = scene2.find_tile(b);
        if (!t1 || !t2)
            fail(Errc::LayoutMismatch, "tile mapping " + a + " -> " + b + " references a missing tile");
        if (t1->rows != t2->rows || t1->cols != t2->cols || std::abs(t1->pitch - t2->pitch) > 1e-6)
            fail(Errc::LayoutMismatch, "tiles " + a + " and " + b + " have different cell grids");
        pairs.emplace_back(t1, t2);
    }
    constexpr double tol = 1e-6;
    for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = i + 1; j < pairs.size(); ++j) {
            const Rectangle &a1 = pairs[i].first->placement, &b1 = pairs[j].first->placement;
            const Rectangle &a2 = pairs[i].second->placement, &b2 = pairs[j].second->placement;
            const bool ok = std::abs(distance(a1.center, b1.center) - distance(a2.center, b2.center)) <= tol &&
                            std::abs(dot(a1.normal, b1.normal) - dot(a2.normal, b2.normal)) <= tol &&
                            std::abs(dot(a1.u, b1.u) - dot(a2.u, b2.u)) <= tol &&
                            std::abs(dot(b1.center - a1.center, a1.normal) - dot(b2.center - a2.center, a2.normal)) <= tol &&
                            std::abs(dot(b1.center - a1.center, a1.u) - dot(b2.center - a2.center, a2.u)) <= tol;
            if (!ok)
                fail(Errc::LayoutMismatch, "tile mapping is not congruent");
        }

    const auto incident = tile_incident_fields(scene1, cfg);
    ReplicaDeployment rep{scene2, {}};
    for (auto& t : rep.scene.tiles) {
        const bool mapped = std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.second->id == t.id; });
        if (mapped || !t.deployment)
            t.deployment = absorb_deployment(t, rep.scene.codebook_for(t));
    }
    for (const auto& [t1, t2] : pairs) {
        const auto sensed = reflect(*t1, incident.at(t1->id));
        const auto pos = t2->cell_positions();
        InjectedSurface s;
        s.exclude_id = t2->id;
        for (size_t i = 0; i < pos.size(); ++i)
            s.patches.push_back(PatchSource{pos[i], t2->placement.normal, t2->pitch * t2->pitch, sensed[i].amplitude});
        rep.surfaces.push_back(std::move(s));
    }
    return rep;
}

} // namespace wcopy
