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

#include "wavecopy/scenario.hpp"

#include "wavecopy/error.hpp"
#include "wavecopy/png.hpp"
#include "wavecopy/sdm.hpp"

#include <algorithm>
#include <filesystem>
#include <limits>
#include <sstream>

namespace fs = std::filesystem;

namespace wcopy {

namespace {

const Vec3 kZ{0, 0, 1};
const Vec3 kObjectPivot{0.5, 0.4, 1.2};
const Vec3 kTile1{2.5, 3.5, 2.4};
const Vec3 kTile2{4.17, 0.0, 2.4};
const Vec3 kRx2{6.17, 3.1, 1.2};
constexpr double kRoom1X = 3.3;
constexpr double kRoom2X = 7.0;
constexpr double kDepth = 3.5;
constexpr double kHeight = 3.0;

Material absorber() { return Material{MaterialKind::Absorber, {}}; }

void add_wall(RoomScene& s, const std::string& id, const Vec3& c, const Vec3& n, const Vec3& up, double hu, double hv)
{
    s.walls.push_back(make_rectangle(id, c, n, up, hu, hv, absorber()));
}

// unit vectors across the beam direction a: e1 horizontal, e2 = a x e1
std::pair<Vec3, Vec3> transverse(const Vec3& a)
{
    const Vec3 e1 = normalized(cross(kZ, a));
    return {e1, cross(a, e1)};
}

void add_room1(RoomScene& s, bool with_window)
{
    const double hx = 0.5 * kRoom1X, hy = 0.5 * kDepth, hz = 0.5 * kHeight;
    add_wall(s, "r1_floor", {hx, hy, 0}, {0, 0, 1}, {0, 1, 0}, hx, hy);
    add_wall(s, "r1_ceiling", {hx, hy, kHeight}, {0, 0, -1}, {0, 1, 0}, hx, hy);
    add_wall(s, "r1_west", {0, hy, hz}, {1, 0, 0}, kZ, hy, hz);
    add_wall(s, "r1_south", {hx, 0, hz}, {0, 1, 0}, kZ, hx, hz);
    add_wall(s, "r1_north", {hx, kDepth, hz}, {0, -1, 0}, kZ, hx, hz);
    if (!with_window) {
        add_wall(s, "r1_east", {kRoom1X, hy, hz}, {-1, 0, 0}, kZ, hy, hz);
        return;
    }
    // dividing wall with a window at y in [1.3, 2.4], z in [2.0, 2.8]
    add_wall(s, "divider_low", {kRoom1X, hy, 1.0}, {-1, 0, 0}, kZ, hy, 1.0);
    add_wall(s, "divider_high", {kRoom1X, hy, 2.9}, {-1, 0, 0}, kZ, hy, 0.1);
    add_wall(s, "divider_south", {kRoom1X, 0.65, 2.4}, {-1, 0, 0}, kZ, 0.65, 0.4);
    add_wall(s, "divider_north", {kRoom1X, 2.95, 2.4}, {-1, 0, 0}, kZ, 0.55, 0.4);
}

void add_room2(RoomScene& s)
{
    const double hx = 0.5 * (kRoom2X - kRoom1X), cx = 0.5 * (kRoom1X + kRoom2X);
    const double hy = 0.5 * kDepth, hz = 0.5 * kHeight;
    add_wall(s, "r2_floor", {cx, hy, 0}, {0, 0, 1}, {0, 1, 0}, hx, hy);
    add_wall(s, "r2_ceiling", {cx, hy, kHeight}, {0, 0, -1}, {0, 1, 0}, hx, hy);
    add_wall(s, "r2_east", {kRoom2X, hy, hz}, {-1, 0, 0}, kZ, hy, hz);
    add_wall(s, "r2_south", {cx, 0, hz}, {0, 1, 0}, kZ, hx, hz);
    add_wall(s, "r2_north", {cx, kDepth, hz}, {0, -1, 0}, kZ, hx, hz);
}

void add_object_sources_cameras(RoomScene& s)
{
    ReflectorObject obj;
    obj.id = "object";
    obj.pivot = kObjectPivot;
    int color = 0;
    for (double dy : {-0.07, 0.07})
        for (double dz : {-0.07, 0.07}) {
            Rectangle r = make_rectangle("plate" + std::to_string(color), kObjectPivot + Vec3{0, dy, dz}, {1, 0, 0}, kZ,
                                         0.05, 0.05, Material{MaterialKind::Pec, {}});
            r.color = color++;
            obj.rects.push_back(r);
        }
    s.objects.push_back(obj);

    const Vec3 a = normalized(kTile1 - kObjectPivot);
    const auto [e1, e2] = transverse(a);
    const Vec3 rx1 = kTile1 - 0.1 * a;
    const Vec3 src[3] = {kObjectPivot + 0.7 * a + 0.6 * e1, kObjectPivot + 0.7 * a - 0.6 * e1,
                         kObjectPivot + 0.7 * a + 0.5 * e2};
    for (int i = 0; i < 3; ++i) {
        s.sources.push_back(PointSource{"tx" + std::to_string(i + 1), src[i], {1.0, 0.0}, kDefaultFrequency});
        // absorbing baffle between the emitter and the far wall so only scattered waves reach it
        const Vec3 d = normalized(rx1 - src[i]);
        s.walls.push_back(make_rectangle("baffle" + std::to_string(i + 1), src[i] + 0.15 * d, d, kZ, 0.15, 0.15, absorber()));
    }
    s.arrays.push_back(make_planar_array("rx1", rx1, e1, e2));

    const Vec3 view = normalized(Vec3{0.6, 0.8, 0.2});
    const Vec3 center = kObjectPivot + 1.2 * view;
    const Vec3 right = normalized(cross(-view, kZ));
    s.cameras.push_back(Camera{"L", center - 0.3 * right, kObjectPivot, kZ, 0.6, 64, 64});
    s.cameras.push_back(Camera{"R", center + 0.3 * right, kObjectPivot, kZ, 0.6, 64, 64});
    s.codebooks["2bit"] = Codebook::two_bit();
}

} // namespace

RoomScene make_training_scene()
{
    RoomScene s;
    add_room1(s, false);
    add_object_sources_cameras(s);
    validate_scene(s);
    return s;
}

RoomScene make_two_room_scene()
{
    RoomScene s;
    add_room1(s, true);
    add_room2(s);
    add_object_sources_cameras(s);
    s.tiles.push_back(make_tile("T1", kTile1, {0, -1, 0}, kZ));
    s.tiles.push_back(make_tile("T2", kTile2, {0, 1, 0}, kZ));
    // destination axes follow the relay's image inversion
    const Vec3 b2 = normalized(kRx2 - kTile2);
    const auto [f1, f2] = transverse(b2);
    s.arrays.push_back(make_planar_array("rx2", kRx2, -f1, -f2));
    s.copy = CopySpec{"object", "rx1", "rx2"};
    validate_scene(s);
    return s;
}

TrainingDataSummary run_training_data(const RoomScene& scene, const PropagationConfig& cfg, const ScenarioConfig& sc)
{
    if (sc.out_dir.empty())
        fail(Errc::Validation, "an output directory is required");
    const auto records = generate_dataset(scene, cfg, sc.dataset_size, sc.seed);
    DatasetManifest m = make_manifest(scene, records, sc.seed, {});
    m = split_dataset(m, sc.split_fraction, sc.seed);
    write_dataset(records, m, sc.out_dir);
    TrainingDataSummary s;
    s.manifest = m;
    s.train = split_indices(m, "train").size();
    s.test = split_indices(m, "test").size();
    return s;
}

CopyReport run_copy(const RoomScene& scene, const PropagationConfig& cfg, std::uint64_t seed, int max_hops)
{
    if (!scene.copy)
        fail(Errc::Validation, "scene has no copy section");
    const CopySpec& cp = *scene.copy;
    CopyReport rep;
    RoomScene posed = scene;
    rep.rotation = draw_rotations(1, seed).front();
    for (auto& o : posed.objects)
        if (o.id == cp.source)
            o = rotate_object(o, rep.rotation);

    const PweGraph graph = build_graph(posed);
    rep.route = route(graph, cp.source, cp.destination, max_hops);
    rep.callbacks = compile_route(rep.route, graph);

    const ReceiveArray& ref = *posed.find_array(cp.reference);
    const ReceiveArray& dst = *posed.find_array(cp.destination);
    rep.reference = array_reading(deploy(posed, {}, cfg.k), cfg, ref);
    rep.copy_quantized = array_reading(deploy(posed, rep.callbacks, cfg.k, false), cfg, dst);
    rep.copy_continuous = array_reading(deploy(posed, rep.callbacks, cfg.k, true), cfg, dst);
    rep.fidelity_quantized = field_fidelity(rep.reference.data, rep.copy_quantized.data);
    rep.fidelity_continuous = field_fidelity(rep.reference.data, rep.copy_continuous.data);
    return rep;
}

Json copy_report_to_json(const CopyReport& r)
{
    Json cbs = Json::array();
    for (const auto& tc : r.callbacks)
        cbs.push_back(Json{{"tile", tc.tile}, {"callback", callback_to_json(tc.callback)}});
    return Json{{"route", r.route.nodes},
                {"hops", r.route.hops()},
                {"path_length_m", r.route.length},
                {"callbacks", cbs},
                {"rotation", Json::array({r.rotation.yaw, r.rotation.pitch, r.rotation.roll})},
                {"fidelity_quantized", r.fidelity_quantized},
                {"fidelity_continuous", r.fidelity_continuous}};
}

namespace {

fs::path locate_fake(const std::string& fake_dir, const std::string& name)
{
    const fs::path a = fs::path(fake_dir) / name;
    if (fs::exists(a))
        return a;
    const fs::path b = fs::path(fake_dir) / "photos" / name;
    if (fs::exists(b))
        return b;
    fail(Errc::IndexMismatch, "no generated image " + name + " in " + fake_dir);
}

} // namespace

EvaluationReport run_evaluate(const std::string& dataset_dir, const std::string& fake_dir, std::uint64_t seed)
{
    const DatasetManifest m = read_manifest(dataset_dir);
    EvaluationReport rep;
    rep.indices = m.split.empty() ? std::vector<size_t>{} : split_indices(m, "test");
    if (rep.indices.empty())
        fail(Errc::IndexMismatch, "dataset has no test split");
    std::vector<ImageU8> real, fake;
    for (size_t i : rep.indices) {
        const std::string name = photo_name(i, 'L');
        real.push_back(read_png((fs::path(dataset_dir) / "photos" / name).string()));
        fake.push_back(read_png(locate_fake(fake_dir, name).string()));
        if (real.back().height != fake.back().height || real.back().width != fake.back().width)
            fail(Errc::IndexMismatch, "generated image " + name + " has a different size");
    }
    const size_t n = rep.indices.size();
    std::vector<size_t> sigma(n);
    for (size_t i = 0; i < n; ++i)
        sigma[i] = i;
    SplitMix64 rng(seed);
    for (size_t i = n; i > 1; --i)
        std::swap(sigma[i - 1], sigma[static_cast<size_t>(rng.next() % i)]);
    std::vector<double> p, s, bp, bs;
    for (size_t k = 0; k < n; ++k) {
        const std::string name = std::to_string(rep.indices[k]);
        rep.scores.push_back(PairScore{name, psnr(real[k], fake[k]), ssim(real[k], fake[k])});
        rep.baseline.push_back(PairScore{name, psnr(real[sigma[k]], fake[k]), ssim(real[sigma[k]], fake[k])});
        p.push_back(rep.scores.back().psnr);
        s.push_back(rep.scores.back().ssim);
        bp.push_back(rep.baseline.back().psnr);
        bs.push_back(rep.baseline.back().ssim);
    }
    auto summarize_or_inf = [](const std::vector<double>& v) {
        try {
            return summarize(v);
        } catch (const Error&) {
            Summary all_inf;
            const double inf = std::numeric_limits<double>::infinity();
            all_inf.min = all_inf.q1 = all_inf.median = all_inf.q3 = all_inf.max = inf;
            all_inf.excluded_inf = v.size();
            return all_inf;
        }
    };
    rep.psnr = summarize_or_inf(p);
    rep.ssim = summarize(s);
    rep.baseline_psnr = summarize_or_inf(bp);
    rep.baseline_ssim = summarize(bs);
    return rep;
}

std::vector<PairScore> compare_dirs(const std::string& real_dir, const std::string& fake_dir)
{
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(real_dir))
        if (e.is_regular_file() && e.path().extension() == ".png")
            names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    if (names.empty())
        fail(Errc::IndexMismatch, "no PNG images in " + real_dir);
    std::vector<PairScore> out;
    for (const auto& name : names) {
        const ImageU8 a = read_png((fs::path(real_dir) / name).string());
        const ImageU8 b = read_png(locate_fake(fake_dir, name).string());
        out.push_back(PairScore{name, psnr(a, b), ssim(a, b)});
    }
    return out;
}

namespace {

std::string num(double v)
{
    if (v == std::numeric_limits<double>::infinity())
        return "inf";
    std::ostringstream ss;
    ss.precision(10);
    ss << v;
    return ss.str();
}

} // namespace

std::string evaluation_csv(const EvaluationReport& r)
{
    std::ostringstream out;
    out << "row,index,psnr_db,ssim,baseline_psnr_db,baseline_ssim\n";
    for (size_t k = 0; k < r.scores.size(); ++k)
        out << "record," << r.scores[k].name << ',' << num(r.scores[k].psnr) << ',' << num(r.scores[k].ssim) << ','
            << num(r.baseline[k].psnr) << ',' << num(r.baseline[k].ssim) << '\n';
    out << "median,," << num(r.psnr.median) << ',' << num(r.ssim.median) << ',' << num(r.baseline_psnr.median) << ','
        << num(r.baseline_ssim.median) << '\n';
    out << "iqr,," << num(r.psnr.q3 - r.psnr.q1) << ',' << num(r.ssim.q3 - r.ssim.q1) << ','
        << num(r.baseline_psnr.q3 - r.baseline_psnr.q1) << ',' << num(r.baseline_ssim.q3 - r.baseline_ssim.q1)
        << '\n';
    return out.str();
}

Json summary_to_json(const Summary& s)
{
    auto v = [](double x) { return std::isfinite(x) ? Json(x) : Json("inf"); };
    return Json{{"min", v(s.min)},      {"q1", v(s.q1)},       {"median", v(s.median)},
                {"q3", v(s.q3)},        {"max", v(s.max)},     {"count", s.count},
                {"excluded_inf", s.excluded_inf}};
}

} // namespace wcopy
