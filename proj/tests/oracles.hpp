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

#include "wavecopy/pwe.hpp"
#include "wavecopy/sdm.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace wcopy::testing {

struct RandomGraph {
    PweGraph graph;
    std::vector<CopyCommand> commands; // two commands over four distinct endpoints
};

/// Random graph on n nodes (4 <= n <= 10): nodes e0..e3 are endpoints, the rest relays named t*.
/// Weights are small integers when `integer_weights` is set so exact ties occur.
inline RandomGraph random_graph(std::uint64_t seed, bool integer_weights)
{
    SplitMix64 rng(seed);
    const int n = 4 + static_cast<int>(rng.next() % 7);
    const double p = 0.3 + 0.5 * rng.uniform();
    RandomGraph g;
    for (int i = 0; i < n; ++i) {
        GraphNode node;
        node.id = i < 4 ? "e" + std::to_string(i) : "t" + std::to_string(i);
        node.relay = i >= 4;
        g.graph.add_node(node);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const std::string a = i < 4 ? "e" + std::to_string(i) : "t" + std::to_string(i);
            const std::string b = j < 4 ? "e" + std::to_string(j) : "t" + std::to_string(j);
            if (rng.uniform() < p)
                g.graph.set_edge(a, b, integer_weights ? 1.0 + static_cast<double>(rng.next() % 4) : 0.5 + rng.uniform());
        }
    g.commands = {CopyCommand{"e0", "e1", "a"}, CopyCommand{"e2", "e3", "b"}};
    return g;
}

/// Every simple path from s to t with at most `max_hops` edges whose intermediate nodes are
/// relays not in `banned`, by depth-first enumeration.
inline void enumerate_paths(const PweGraph& g, int s, int t, int max_hops, const std::vector<bool>& banned,
                            std::vector<std::vector<int>>& out)
{
    std::vector<int> path{s};
    std::vector<bool> used(static_cast<size_t>(g.size()), false);
    used[static_cast<size_t>(s)] = true;
    auto dfs = [&](auto&& self, int u) -> void {
        if (static_cast<int>(path.size()) - 1 >= max_hops)
            return;
        for (int v = 0; v < g.size(); ++v) {
            if (!g.has_edge(u, v) || used[static_cast<size_t>(v)])
                continue;
            if (v == t) {
                path.push_back(v);
                out.push_back(path);
                path.pop_back();
                continue;
            }
            if (!g.node(v).relay || banned[static_cast<size_t>(v)])
                continue;
            used[static_cast<size_t>(v)] = true;
            path.push_back(v);
            self(self, v);
            path.pop_back();
            used[static_cast<size_t>(v)] = false;
        }
    };
    dfs(dfs, s);
}

inline double path_length(const PweGraph& g, const std::vector<int>& p)
{
    double len = 0.0;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        len += g.weight(p[i], p[i + 1]);
    return len;
}

inline std::vector<std::string> path_ids(const PweGraph& g, const std::vector<int>& p)
{
    std::vector<std::string> out;
    for (int i : p)
        out.push_back(g.node(i).id);
    return out;
}

/// Shortest route by exhaustive enumeration; ties go to the lexicographically smallest id sequence.
inline std::optional<WaveRoute> oracle_route(const PweGraph& g, const std::string& src, const std::string& dst,
                                             int max_hops)
{
    std::vector<std::vector<int>> paths;
    enumerate_paths(g, g.index_of(src), g.index_of(dst), max_hops, std::vector<bool>(static_cast<size_t>(g.size())),
                    paths);
    std::optional<WaveRoute> best;
    for (const auto& p : paths) {
        WaveRoute r{path_ids(g, p), path_length(g, p)};
        if (!best || r.length < best->length || (r.length == best->length && r.nodes < best->nodes))
            best = r;
    }
    return best;
}

/// Minimum total length of two routes sharing no intermediate node, by trying every pair.
inline std::optional<double> oracle_disjoint(const PweGraph& g, const std::vector<CopyCommand>& cmds, int max_hops)
{
    std::vector<bool> banned(static_cast<size_t>(g.size()), false);
    for (const auto& c : cmds) {
        banned[static_cast<size_t>(g.index_of(c.src))] = true;
        banned[static_cast<size_t>(g.index_of(c.dst))] = true;
    }
    std::vector<std::vector<int>> a, b;
    enumerate_paths(g, g.index_of(cmds[0].src), g.index_of(cmds[0].dst), max_hops, banned, a);
    enumerate_paths(g, g.index_of(cmds[1].src), g.index_of(cmds[1].dst), max_hops, banned, b);
    std::optional<double> best;
    for (const auto& pa : a)
        for (const auto& pb : b) {
            bool clash = false;
            for (size_t i = 1; i + 1 < pa.size() && !clash; ++i)
                for (size_t j = 1; j + 1 < pb.size() && !clash; ++j)
                    clash = pa[i] == pb[j];
            if (clash)
                continue;
            const double len = path_length(g, pa) + path_length(g, pb);
            if (!best || len < *best)
                best = len;
        }
    return best;
}

} // namespace wcopy::testing
