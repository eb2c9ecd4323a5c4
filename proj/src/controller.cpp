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

#include "wavecopy/controller.hpp"

#include "wavecopy/error.hpp"

#include <memory>
#include <mutex>
#include <thread>

namespace wcopy {

Json tile_callbacks_to_json(const std::vector<TileCallback>& cbs)
{
    Json out = Json::array();
    for (const auto& tc : cbs)
        out.push_back(Json{{"tile", tc.tile}, {"callback", callback_to_json(tc.callback)}});
    return out;
}

std::vector<TileCallback> tile_callbacks_from_json(const Json& j)
{
    if (!j.is_array())
        fail(Errc::Validation, "callbacks must be an array");
    std::vector<TileCallback> out;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("tile") || !e.contains("callback"))
            fail(Errc::Validation, "callback entries need 'tile' and 'callback'");
        out.push_back(TileCallback{e.at("tile").get<std::string>(), callback_from_json(e.at("callback"))});
    }
    return out;
}

Json prediction_to_json(const ChannelPrediction& p)
{
    return Json{{"focal_magnitude", p.focal_magnitude},
                {"continuous_magnitude", p.continuous_magnitude},
                {"fidelity", p.fidelity},
                {"hops", p.hops},
                {"path_length_m", p.path_length}};
}

Controller::Controller(RoomScene scene, PropagationConfig cfg, int max_hops)
    : scene_(std::move(scene)), cfg_(cfg), max_hops_(max_hops)
{
    validate_scene(scene_);
    graph_ = build_graph(scene_);
}

std::uint64_t Controller::revision() const
{
    std::shared_lock lock(mu_);
    return revision_;
}

namespace {

std::vector<CopyCommand> commands_from_json(const Json& j)
{
    if (!j.is_array() || j.empty())
        fail(Errc::Validation, "'commands' must be a non-empty array");
    std::vector<CopyCommand> out;
    for (const auto& c : j)
        out.push_back(CopyCommand{c.at("src").get<std::string>(), c.at("dst").get<std::string>(),
                                  c.value("group", std::string{})});
    return out;
}

Json routes_json(const std::vector<WaveRoute>& routes)
{
    Json out = Json::array();
    for (const auto& r : routes)
        out.push_back(route_to_json(r));
    return out;
}

} // namespace

Json Controller::cmd_build_graph()
{
    std::unique_lock lock(mu_);
    graph_ = build_graph(scene_);
    commands_.clear();
    routes_.clear();
    ++revision_;
    return graph_to_json(graph_);
}

Json Controller::cmd_route(const Json& args) const
{
    std::shared_lock lock(mu_);
    const int hops = args.value("max_hops", max_hops_);
    return route_to_json(route(graph_, args.at("src").get<std::string>(), args.at("dst").get<std::string>(), hops));
}

Json Controller::cmd_route_disjoint(const Json& args)
{
    const auto commands = commands_from_json(args.at("commands"));
    std::unique_lock lock(mu_);
    const int hops = args.value("max_hops", max_hops_);
    auto routes = route_disjoint(graph_, commands, hops);
    commands_ = commands;
    routes_ = std::move(routes);
    ++revision_;
    return Json{{"routes", routes_json(routes_)}};
}

Json Controller::cmd_deploy(const Json& args)
{
    std::unique_lock lock(mu_);
    std::vector<TileCallback> cbs;
    if (args.contains("callbacks")) {
        cbs = tile_callbacks_from_json(args.at("callbacks"));
    } else {
        if (routes_.empty())
            fail(Errc::ConfigUnresolved, "no routes to deploy; run route-disjoint or pass callbacks");
        for (const auto& r : routes_) {
            auto part = compile_route(r, graph_);
            cbs.insert(cbs.end(), part.begin(), part.end());
        }
    }
    deploy(scene_, cbs, cfg_.k); // validates tile ids and duplicates
    deployed_ = std::move(cbs);
    ++revision_;
    return Json{{"revision", revision_}, {"callbacks", tile_callbacks_to_json(deployed_)}};
}

Json Controller::cmd_predict(const Json& args) const
{
    std::shared_lock lock(mu_);
    const auto cbs = args.contains("callbacks") ? tile_callbacks_from_json(args.at("callbacks")) : deployed_;
    std::vector<Vec3> probes;
    if (args.contains("probes")) {
        for (const auto& p : args.at("probes"))
            probes.push_back(vec_from_json(p));
    } else {
        std::string id = args.value("array", std::string{});
        if (id.empty() && scene_.copy)
            id = scene_.copy->destination;
        const ReceiveArray* arr = scene_.find_array(id);
        if (!arr)
            fail(Errc::UnknownNode, "predict needs 'probes' or a known 'array'");
        probes = arr->elements;
    }
    return prediction_to_json(predict_channel(scene_, cbs, probes, cfg_));
}

Json Controller::cmd_reroute(const Json& args)
{
    const std::string moved = args.at("moved").get<std::string>();
    const Vec3 pos = vec_from_json(args.at("position"));
    std::unique_lock lock(mu_);
    if (routes_.empty())
        fail(Errc::ConfigUnresolved, "no active routes to repair");
    RoomScene scene = scene_;
    for (auto& e : scene.endpoints)
        if (e.id == moved)
            e.position = pos;
    auto res = reroute(graph_, scene, commands_, routes_, moved, pos, args.value("max_hops", max_hops_));
    scene_ = std::move(scene);
    graph_ = std::move(res.graph);
    routes_ = std::move(res.routes);
    ++revision_;
    return Json{{"routes", routes_json(routes_)}};
}

Json Controller::cmd_state() const
{
    std::shared_lock lock(mu_);
    Json cmds = Json::array();
    for (const auto& c : commands_)
        cmds.push_back(Json{{"src", c.src}, {"dst", c.dst}, {"group", c.group}});
    return Json{{"revision", revision_},
                {"nodes", graph_.size()},
                {"commands", cmds},
                {"routes", routes_json(routes_)},
                {"deployed", tile_callbacks_to_json(deployed_)}};
}

Json Controller::dispatch(const std::string& cmd, const Json& args)
{
    if (cmd == "build-graph")
        return cmd_build_graph();
    if (cmd == "route")
        return cmd_route(args);
    if (cmd == "route-disjoint")
        return cmd_route_disjoint(args);
    if (cmd == "deploy")
        return cmd_deploy(args);
    if (cmd == "predict")
        return cmd_predict(args);
    if (cmd == "reroute")
        return cmd_reroute(args);
    if (cmd == "state")
        return cmd_state();
    fail(Errc::Validation, "unknown command '" + cmd + "'");
}

Json Controller::handle(const Json& request)
{
    Json resp{{"v", kProtocolVersion}, {"id", request.is_object() ? request.value("id", Json()) : Json()}};
    auto error = [&](std::string_view code, const std::string& msg) {
        resp["ok"] = false;
        resp["error"] = Json{{"code", code}, {"message", msg}};
        return resp;
    };
    try {
        if (!request.is_object() || !request.contains("cmd"))
            return error("Validation", "request must be an object with 'cmd'");
        if (request.value("v", kProtocolVersion) != kProtocolVersion)
            return error("Validation", "unsupported protocol version");
        const Json args = request.value("args", Json::object());
        resp["result"] = dispatch(request.at("cmd").get<std::string>(), args);
        resp["ok"] = true;
        return resp;
    } catch (const Error& e) {
        return error(errc_name(e.code()), e.what());
    } catch (const Json::exception& e) {
        return error("Validation", e.what());
    }
}

Json Controller::handle_line(const std::string& line)
{
    Json req;
    try {
        req = Json::parse(line);
    } catch (const Json::exception& e) {
        Json resp{{"v", kProtocolVersion}, {"id", nullptr}, {"ok", false}};
        resp["error"] = Json{{"code", "Validation"}, {"message", e.what()}};
        return resp;
    }
    return handle(req);
}

void Controller::serve(TcpListener& listener, std::optional<size_t> max_clients)
{
    std::vector<std::thread> workers;
    size_t served = 0;
    while (!stopping_ && (!max_clients || served < *max_clients)) {
        std::unique_ptr<TcpStream> client;
        try {
            client = std::make_unique<TcpStream>(listener.accept());
        } catch (const Error&) {
            break; // listener closed
        }
        ++served;
        workers.emplace_back([this, s = std::move(client)] {
            std::string line;
            try {
                while (s->read_line(line)) {
                    if (line.empty())
                        continue;
                    const std::string out = handle_line(line).dump() + "\n";
                    s->write_all(reinterpret_cast<const std::uint8_t*>(out.data()), out.size());
                }
            } catch (const Error&) {
                // client went away
            }
        });
    }
    for (auto& w : workers)
        w.join();
}

} // namespace wcopy
