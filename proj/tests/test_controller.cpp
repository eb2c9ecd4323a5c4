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
#include "wavecopy/scenario.hpp"

#include <doctest.h>

#include <thread>

using namespace wcopy;

namespace {

Json request(const std::string& cmd, Json args = Json::object(), int id = 1)
{
    return Json{{"v", kProtocolVersion}, {"id", id}, {"cmd", cmd}, {"args", std::move(args)}};
}

std::string error_code(const Json& resp)
{
    REQUIRE(resp.at("ok") == false);
    return resp.at("error").at("code").get<std::string>();
}

const Json kCopyCommand = Json::array({Json{{"src", "object"}, {"dst", "rx2"}, {"group", "a"}}});

} // namespace

TEST_CASE("controller: build-graph and route")
{
    Controller c(make_two_room_scene(), default_propagation());
    const auto g = c.handle(request("build-graph"));
    REQUIRE(g.at("ok") == true);
    CHECK(g.at("v") == kProtocolVersion);
    CHECK(g.at("id") == 1);
    CHECK(g.at("result").at("nodes").size() == static_cast<size_t>(build_graph(make_two_room_scene()).size()));

    const auto r = c.handle(request("route", {{"src", "object"}, {"dst", "rx2"}}, 7));
    REQUIRE(r.at("ok") == true);
    CHECK(r.at("id") == 7);
    CHECK(r.at("result").at("nodes") == Json::array({"object", "T1", "T2", "rx2"}));
    CHECK(r.at("result").at("hops") == 3);

    CHECK(error_code(c.handle(request("route", {{"src", "object"}, {"dst", "rx2"}, {"max_hops", 1}}))) == "NoRoute");
    CHECK(error_code(c.handle(request("route", {{"src", "object"}, {"dst", "ghost"}}))) == "UnknownNode");
}

TEST_CASE("controller: malformed requests are answered, not thrown")
{
    Controller c(make_two_room_scene(), default_propagation());
    auto bad_version = request("state");
    bad_version["v"] = kProtocolVersion + 1;
    CHECK(error_code(c.handle(bad_version)) == "Validation");
    CHECK(error_code(c.handle(request("teleport"))) == "Validation");
    CHECK(error_code(c.handle(Json::array())) == "Validation");
    CHECK(error_code(c.handle(request("route", {{"src", "object"}}))) == "Validation");
    CHECK(error_code(c.handle_line("{not json")) == "Validation");
    CHECK(error_code(c.handle(request("deploy"))) == "ConfigUnresolved");
    CHECK(error_code(c.handle(request("reroute", {{"moved", "rx2"}, {"position", {6, 3, 1.2}}}))) ==
          "ConfigUnresolved");
    CHECK(error_code(c.handle(request("deploy", {{"callbacks", Json::array({Json{{"tile", "T9"},
                                                                                {"callback", Json{{"kind", "ABSORB"}}}}})}}))) ==
          "UnknownTile");
    CHECK(c.revision() == 0);
}

TEST_CASE("controller: route-disjoint, deploy, state")
{
    Controller c(make_two_room_scene(), default_propagation());
    const auto rd = c.handle(request("route-disjoint", {{"commands", kCopyCommand}}));
    REQUIRE(rd.at("ok") == true);
    CHECK(rd.at("result").at("routes").at(0).at("nodes") == Json::array({"object", "T1", "T2", "rx2"}));

    const auto dep = c.handle(request("deploy"));
    REQUIRE(dep.at("ok") == true);
    const auto cbs = tile_callbacks_from_json(dep.at("result").at("callbacks"));
    REQUIRE(cbs.size() == 2);
    CHECK(cbs[0].tile == "T1");
    CHECK(cbs[1].tile == "T2");
    CHECK(cbs[0].callback.kind == CallbackKind::Focus);

    const auto st = c.handle(request("state"));
    REQUIRE(st.at("ok") == true);
    CHECK(st.at("result").at("revision") == c.revision());
    CHECK(st.at("result").at("deployed") == dep.at("result").at("callbacks"));
    CHECK(st.at("result").at("commands").size() == 1);

    // Rebuilding the graph drops active routes.
    REQUIRE(c.handle(request("build-graph")).at("ok") == true);
    CHECK(c.handle(request("state")).at("result").at("routes").empty());
}

TEST_CASE("controller: predict over explicit probes")
{
    const RoomScene s = make_two_room_scene();
    Controller c(s, default_propagation());
    REQUIRE(c.handle(request("route-disjoint", {{"commands", kCopyCommand}})).at("ok") == true);
    REQUIRE(c.handle(request("deploy")).at("ok") == true);
    const auto& el = s.find_array("rx2")->elements;
    Json probes = Json::array({vec_to_json(el[0]), vec_to_json(el[55])});
    const auto p = c.handle(request("predict", {{"probes", probes}}));
    REQUIRE(p.at("ok") == true);
    const double f = p.at("result").at("fidelity").get<double>();
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(p.at("result").at("hops") == 3);
    CHECK(p.at("result").at("path_length_m").get<double>() > 0.0);
    CHECK(error_code(c.handle(request("predict", {{"array", "nope"}}))) == "UnknownNode");
}

TEST_CASE("controller: reroute follows a moving endpoint")
{
    RoomScene s = make_two_room_scene();
    s.endpoints.push_back(Endpoint{"user", {6.0, 1.0, 1.2}});
    Controller c(s, default_propagation());
    const Json cmds = Json::array({Json{{"src", "object"}, {"dst", "user"}, {"group", "a"}}});
    const auto before = c.handle(request("route-disjoint", {{"commands", cmds}}));
    REQUIRE(before.at("ok") == true);
    const auto after = c.handle(request("reroute", {{"moved", "user"}, {"position", {5.9, 1.1, 1.2}}}));
    REQUIRE(after.at("ok") == true);
    CHECK(after.at("result").at("routes").at(0).at("nodes") == before.at("result").at("routes").at(0).at("nodes"));
    const auto st = c.handle(request("state"));
    CHECK(st.at("result").at("revision") == 2);
}

TEST_CASE("controller: concurrent queries during writes")
{
    Controller c(make_two_room_scene(), default_propagation());
    std::atomic<int> failures{0};
    std::vector<std::thread> readers;
    for (int t = 0; t < 4; ++t)
        readers.emplace_back([&] {
            for (int i = 0; i < 50; ++i) {
                const auto r = c.handle(request("route", {{"src", "object"}, {"dst", "rx2"}}));
                if (r.at("ok") != true || r.at("result").at("hops") != 3)
                    ++failures;
            }
        });
    for (int i = 0; i < 20; ++i)
        if (c.handle(request("build-graph")).at("ok") != true)
            ++failures;
    for (auto& t : readers)
        t.join();
    CHECK(failures == 0);
    CHECK(c.revision() == 20);
}

TEST_CASE("controller: line protocol over TCP")
{
    Controller c(make_two_room_scene(), default_propagation());
    TcpListener listener(0);
    std::thread server([&] { c.serve(listener, 2); });

    auto exchange = [&](TcpStream& s, const std::string& line) {
        const std::string out = line + "\n";
        s.write_all(reinterpret_cast<const std::uint8_t*>(out.data()), out.size());
        std::string resp;
        REQUIRE(s.read_line(resp));
        return Json::parse(resp);
    };
    {
        auto a = TcpStream::connect("127.0.0.1", listener.port());
        auto b = TcpStream::connect("127.0.0.1", listener.port());
        const auto ra = exchange(a, request("route", {{"src", "object"}, {"dst", "rx2"}}, 11).dump());
        const auto rb = exchange(b, request("route", {{"src", "object"}, {"dst", "rx2"}}, 12).dump());
        CHECK(ra.at("id") == 11);
        CHECK(rb.at("id") == 12);
        CHECK(ra.at("result") == rb.at("result"));
        CHECK(error_code(exchange(a, "garbage")) == "Validation");
        CHECK(exchange(b, request("state", Json::object(), 13).dump()).at("ok") == true);
        a.close_write();
        b.close_write();
    }
    server.join();
}
