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

#include "wavecopy/io.hpp"

#include "wavecopy/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wcopy {

namespace {

const char* material_name(MaterialKind k)
{
    switch (k) {
    case MaterialKind::Absorber: return "absorber";
    case MaterialKind::Pec: return "pec";
    case MaterialKind::Sdm: return "sdm";
    }
    return "absorber";
}

MaterialKind material_from(const std::string& s)
{
    if (s == "absorber")
        return MaterialKind::Absorber;
    if (s == "pec")
        return MaterialKind::Pec;
    fail(Errc::Validation, "unknown material '" + s + "'");
}

Json rect_to_json(const Rectangle& r)
{
    return Json{{"id", r.id},     {"center", vec_to_json(r.center)}, {"normal", vec_to_json(r.normal)},
                {"u", vec_to_json(r.u)}, {"hu", r.hu}, {"hv", r.hv},
                {"material", material_name(r.material.kind)}, {"color", r.color}};
}

Rectangle rect_from_json(const Json& j)
{
    Rectangle r;
    r.id = j.at("id").get<std::string>();
    r.center = vec_from_json(j.at("center"));
    r.normal = vec_from_json(j.at("normal"));
    r.u = vec_from_json(j.at("u"));
    r.v = cross(r.normal, r.u);
    r.hu = j.at("hu").get<double>();
    r.hv = j.at("hv").get<double>();
    r.material.kind = material_from(j.value("material", std::string("absorber")));
    r.color = j.value("color", 0);
    return r;
}

Json complex_to_json(const Complex& c)
{
    return Json::array({c.real(), c.imag()});
}

Complex complex_from_json(const Json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

} // namespace

Json vec_to_json(const Vec3& v)
{
    return Json::array({v.x, v.y, v.z});
}

Vec3 vec_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 3)
        fail(Errc::Validation, "expected a 3-vector");
    Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!is_finite(v))
        fail(Errc::Validation, "non-finite vector component");
    return v;
}

Json codebook_to_json(const Codebook& book)
{
    Json states = Json::object();
    for (size_t i = 0; i < book.gamma.size(); ++i)
        states[std::to_string(i)] = Json::array({std::round(std::abs(book.gamma[i]) * 1e12) / 1e12,
                                                 std::round(std::arg(book.gamma[i]) * 180.0 / kPi * 1e9) / 1e9});
    return Json{{"states", states}, {"absorb", book.absorb_state}};
}

Codebook codebook_from_json(const std::string& id, const Json& j)
{
    Codebook b;
    b.id = id;
    const auto& states = j.at("states");
    b.gamma.resize(states.size());
    for (const auto& [key, val] : states.items()) {
        const size_t idx = std::stoul(key);
        if (idx >= b.gamma.size())
            fail(Errc::Validation, "codebook '" + id + "' state indices must be contiguous from 0");
        const double mag = val.at(0).get<double>(), deg = val.at(1).get<double>();
        // exact quarter turns keep the stock 2-bit book bit-identical after a round trip
        const double rad = deg == 90.0                    ? kPi / 2
                           : (deg == 180.0 || deg == -180.0) ? kPi
                           : (deg == -90.0 || deg == 270.0)  ? 3 * kPi / 2
                                                             : deg * kPi / 180.0;
        b.gamma[idx] = std::polar(mag, rad);
    }
    b.absorb_state = j.value("absorb", -1);
    return b;
}

Json callback_to_json(const Callback& cb)
{
    Json j{{"kind", callback_name(cb.kind)}};
    switch (cb.kind) {
    case CallbackKind::Steer:
        j["incident"] = vec_to_json(cb.incident);
        j["target"] = vec_to_json(cb.target);
        break;
    case CallbackKind::Split:
        j["incident"] = vec_to_json(cb.incident);
        j["targets"] = Json::array({vec_to_json(cb.target), vec_to_json(cb.target2)});
        break;
    case CallbackKind::Focus:
        j["source"] = vec_to_json(cb.source_point);
        j["focus"] = vec_to_json(cb.focal_point);
        break;
    case CallbackKind::PhaseAlter:
        j["offset"] = cb.phase_offset;
        if (cb.base)
            j["base"] = callback_to_json(*cb.base);
        break;
    case CallbackKind::Absorb:
        break;
    }
    return j;
}

Callback callback_from_json(const Json& j)
{
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "STEER")
            return Callback::steer(vec_from_json(j.at("incident")), vec_from_json(j.at("target")));
        if (kind == "SPLIT")
            return Callback::split(vec_from_json(j.at("incident")), vec_from_json(j.at("targets").at(0)),
                                   vec_from_json(j.at("targets").at(1)));
        if (kind == "ABSORB")
            return Callback::absorb();
        if (kind == "FOCUS")
            return Callback::focus(vec_from_json(j.at("source")), vec_from_json(j.at("focus")));
        if (kind == "PHASE_ALTER") {
            std::optional<Callback> base;
            if (j.contains("base"))
                base = callback_from_json(j.at("base"));
            return Callback::phase_alter(j.at("offset").get<double>(), base);
        }
        fail(Errc::UnsupportedCallback, "unknown callback kind '" + kind + "'");
    } catch (const Json::exception& e) {
        fail(Errc::UnsupportedCallback, std::string("malformed callback: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == Errc::Validation)
            fail(Errc::UnsupportedCallback, e.what());
        throw;
    }
}

Json scene_to_json(const RoomScene& s)
{
    Json j;
    j["walls"] = Json::array();
    for (const auto& w : s.walls)
        j["walls"].push_back(rect_to_json(w));
    j["tiles"] = Json::array();
    for (const auto& t : s.tiles) {
        Json tj{{"id", t.id},
                {"center", vec_to_json(t.placement.center)},
                {"normal", vec_to_json(t.placement.normal)},
                {"u", vec_to_json(t.placement.u)},
                {"rows", t.rows},
                {"cols", t.cols},
                {"pitch", t.pitch},
                {"codebook", t.codebook}};
        if (t.placement.hu != 0.5 * t.cols * t.pitch || t.placement.hv != 0.5 * t.rows * t.pitch) {
            tj["hu"] = t.placement.hu;
            tj["hv"] = t.placement.hv;
        }
        if (t.deployment && !t.deployment->states.empty())
            tj["states"] = t.deployment->states;
        j["tiles"].push_back(tj);
    }
    j["objects"] = Json::array();
    for (const auto& o : s.objects) {
        Json oj{{"id", o.id},
                {"pivot", vec_to_json(o.pivot)},
                {"rotation", Json::array({o.rotation.yaw, o.rotation.pitch, o.rotation.roll})},
                {"rects", Json::array()}};
        for (const auto& r : o.rects)
            oj["rects"].push_back(rect_to_json(r));
        j["objects"].push_back(oj);
    }
    j["sources"] = Json::array();
    for (const auto& src : s.sources)
        j["sources"].push_back(Json{{"id", src.id},
                                    {"position", vec_to_json(src.position)},
                                    {"amplitude", complex_to_json(src.amplitude)},
                                    {"frequency", src.frequency}});
    j["arrays"] = Json::array();
    for (const auto& a : s.arrays) {
        Json aj{{"id", a.id}, {"rows", a.rows}, {"cols", a.cols}, {"elements", Json::array()}};
        for (const auto& e : a.elements)
            aj["elements"].push_back(vec_to_json(e));
        j["arrays"].push_back(aj);
    }
    j["cameras"] = Json::array();
    for (const auto& c : s.cameras)
        j["cameras"].push_back(Json{{"id", c.id},
                                    {"position", vec_to_json(c.position)},
                                    {"look_at", vec_to_json(c.look_at)},
                                    {"up", vec_to_json(c.up)},
                                    {"fov", c.fov},
                                    {"width", c.width},
                                    {"height", c.height}});
    j["endpoints"] = Json::array();
    for (const auto& e : s.endpoints)
        j["endpoints"].push_back(Json{{"id", e.id}, {"position", vec_to_json(e.position)}});
    j["codebooks"] = Json::object();
    for (const auto& [id, b] : s.codebooks)
        j["codebooks"][id] = codebook_to_json(b);
    if (s.copy)
        j["copy"] = Json{{"source", s.copy->source}, {"reference", s.copy->reference}, {"destination", s.copy->destination}};
    return j;
}

RoomScene scene_from_json(const Json& j)
{
    RoomScene s;
    try {
        if (j.contains("codebooks"))
            for (const auto& [id, bj] : j.at("codebooks").items())
                s.codebooks[id] = codebook_from_json(id, bj);
        if (!s.codebooks.count("2bit"))
            s.codebooks["2bit"] = Codebook::two_bit();
        for (const auto& w : j.value("walls", Json::array()))
            s.walls.push_back(rect_from_json(w));
        for (const auto& tj : j.value("tiles", Json::array())) {
            SdmTile t;
            t.id = tj.at("id").get<std::string>();
            t.rows = tj.value("rows", 16);
            t.cols = tj.value("cols", 16);
            t.pitch = tj.value("pitch", 0.5 * wavelength());
            t.codebook = tj.value("codebook", std::string("2bit"));
            t.placement.id = t.id;
            t.placement.center = vec_from_json(tj.at("center"));
            t.placement.normal = vec_from_json(tj.at("normal"));
            t.placement.u = vec_from_json(tj.at("u"));
            t.placement.v = cross(t.placement.normal, t.placement.u);
            t.placement.hu = tj.value("hu", 0.5 * t.cols * t.pitch);
            t.placement.hv = tj.value("hv", 0.5 * t.rows * t.pitch);
            t.placement.material = Material{MaterialKind::Sdm, t.id};
            if (tj.contains("states")) {
                auto it = s.codebooks.find(t.codebook);
                if (it == s.codebooks.end())
                    fail(Errc::Validation, "tile '" + t.id + "' references unknown codebook");
                t.deployment = deployment_from_states(tj.at("states").get<std::vector<int>>(), it->second);
            }
            s.tiles.push_back(std::move(t));
        }
        for (const auto& oj : j.value("objects", Json::array())) {
            ReflectorObject o;
            o.id = oj.at("id").get<std::string>();
            o.pivot = vec_from_json(oj.at("pivot"));
            if (oj.contains("rotation")) {
                const auto& r = oj.at("rotation");
                o.rotation = EulerAngles{r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>()};
            }
            for (const auto& rj : oj.at("rects")) {
                Rectangle r = rect_from_json(rj);
                if (!rj.contains("material"))
                    r.material.kind = MaterialKind::Pec;
                o.rects.push_back(std::move(r));
            }
            s.objects.push_back(std::move(o));
        }
        for (const auto& sj : j.value("sources", Json::array()))
            s.sources.push_back(PointSource{sj.at("id").get<std::string>(), vec_from_json(sj.at("position")),
                                            sj.contains("amplitude") ? complex_from_json(sj.at("amplitude"))
                                                                     : Complex{1.0, 0.0},
                                            sj.value("frequency", kDefaultFrequency)});
        for (const auto& aj : j.value("arrays", Json::array())) {
            ReceiveArray a;
            a.id = aj.at("id").get<std::string>();
            a.rows = aj.at("rows").get<int>();
            a.cols = aj.at("cols").get<int>();
            if (aj.contains("elements")) {
                for (const auto& e : aj.at("elements"))
                    a.elements.push_back(vec_from_json(e));
            } else {
                a = make_planar_array(a.id, vec_from_json(aj.at("center")), vec_from_json(aj.at("col_axis")),
                                      vec_from_json(aj.at("row_axis")), a.rows, a.cols,
                                      aj.value("spacing", 0.5 * wavelength()));
            }
            s.arrays.push_back(std::move(a));
        }
        for (const auto& cj : j.value("cameras", Json::array())) {
            Camera c;
            c.id = cj.at("id").get<std::string>();
            c.position = vec_from_json(cj.at("position"));
            c.look_at = vec_from_json(cj.at("look_at"));
            if (cj.contains("up"))
                c.up = vec_from_json(cj.at("up"));
            c.fov = cj.value("fov", 0.7);
            c.width = cj.value("width", 64);
            c.height = cj.value("height", 64);
            s.cameras.push_back(std::move(c));
        }
        for (const auto& ej : j.value("endpoints", Json::array()))
            s.endpoints.push_back(Endpoint{ej.at("id").get<std::string>(), vec_from_json(ej.at("position"))});
        if (j.contains("copy")) {
            const auto& c = j.at("copy");
            s.copy = CopySpec{c.at("source").get<std::string>(), c.at("reference").get<std::string>(),
                              c.at("destination").get<std::string>()};
        }
    } catch (const Json::exception& e) {
        fail(Errc::Validation, std::string("malformed scene: ") + e.what());
    }
    validate_scene(s);
    return s;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(Errc::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        fail(Errc::Io, "cannot write " + path);
}

RoomScene load_scene(const std::string& path)
{
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const Json::parse_error& e) {
        fail(Errc::Validation, path + ": " + e.what());
    }
    return scene_from_json(j);
}

void save_scene(const RoomScene& scene, const std::string& path)
{
    write_text_file(path, scene_to_json(scene).dump(2) + "\n");
}

Json route_to_json(const WaveRoute& r)
{
    return Json{{"nodes", r.nodes}, {"length", r.length}, {"hops", r.hops()}};
}

Json graph_to_json(const PweGraph& g)
{
    Json j{{"nodes", Json::array()}, {"edges", Json::array()}};
    for (int i = 0; i < g.size(); ++i)
        j["nodes"].push_back(Json{{"id", g.node(i).id},
                                  {"position", vec_to_json(g.node(i).position)},
                                  {"relay", g.node(i).relay}});
    for (const auto& [a, b, w] : g.edges())
        j["edges"].push_back(Json::array({a, b, w}));
    return j;
}

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace wcopy
