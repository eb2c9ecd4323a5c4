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

#include "wavecopy/io.hpp"
#include "wavecopy/net.hpp"
#include "wavecopy/pwe.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace wcopy {

inline constexpr int kProtocolVersion = 1;

/// Single-writer controller state. Mutating commands take an exclusive lock,
/// queries (route, predict, state) run under a shared lock.
class Controller {
public:
    Controller(RoomScene scene, PropagationConfig cfg, int max_hops = kDefaultMaxHops);

    /// One request object in, one response object out. Never throws for
    /// malformed or failing requests; errors are reported in the response.
    Json handle(const Json& request);
    Json handle_line(const std::string& line);

    /// Serves clients one thread each until stop() or `max_clients` have connected.
    void serve(TcpListener& listener, std::optional<size_t> max_clients = std::nullopt);
    void stop() { stopping_ = true; }

    std::uint64_t revision() const;

private:
    Json dispatch(const std::string& cmd, const Json& args);
    Json cmd_build_graph();
    Json cmd_route(const Json& args) const;
    Json cmd_route_disjoint(const Json& args);
    Json cmd_deploy(const Json& args);
    Json cmd_predict(const Json& args) const;
    Json cmd_reroute(const Json& args);
    Json cmd_state() const;

    mutable std::shared_mutex mu_;
    RoomScene scene_;
    PropagationConfig cfg_;
    int max_hops_;
    PweGraph graph_;
    std::vector<CopyCommand> commands_;
    std::vector<WaveRoute> routes_;
    std::vector<TileCallback> deployed_;
    std::uint64_t revision_{0};
    std::atomic<bool> stopping_{false};
};

Json tile_callbacks_to_json(const std::vector<TileCallback>& cbs);
std::vector<TileCallback> tile_callbacks_from_json(const Json& j);
Json prediction_to_json(const ChannelPrediction& p);

} // namespace wcopy
