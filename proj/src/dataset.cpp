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

#include "wavecopy/dataset.hpp"

#include "wavecopy/error.hpp"
#include "wavecopy/png.hpp"
#include "wavecopy/sdm.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;

namespace wcopy {

std::vector<EulerAngles> draw_rotations(size_t n, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<EulerAngles> out(n);
    for (auto& a : out) {
        a.yaw = -kPi + 2.0 * kPi * rng.uniform();
        a.pitch = -kPi + 2.0 * kPi * rng.uniform();
        a.roll = -kPi + 2.0 * kPi * rng.uniform();
    }
    return out;
}

DatasetSelection resolve_selection(const RoomScene& scene, const DatasetSelection& sel)
{
    DatasetSelection r = sel;
    if (r.object.empty() && !scene.objects.empty())
        r.object = scene.objects.front().id;
    if (r.array.empty() && !scene.arrays.empty())
        r.array = scene.arrays.front().id;
    if (r.left_camera.empty() && !scene.cameras.empty())
        r.left_camera = scene.cameras.front().id;
    if (r.right_camera.empty() && scene.cameras.size() > 1)
        r.right_camera = scene.cameras[1].id;
    if (!scene.find_object(r.object) || !scene.find_array(r.array) || !scene.find_camera(r.left_camera) ||
        !scene.find_camera(r.right_camera))
        fail(Errc::Validation, "dataset scene needs an object, a receive array and two cameras");
    return r;
}

DatasetRecord make_record(const RoomScene& scene, const PropagationConfig& cfg, const DatasetSelection& sel,
                          size_t index, const EulerAngles& rotation)
{
    RoomScene posed = scene;
    for (auto& o : posed.objects)
        if (o.id == sel.object)
            o = rotate_object(o, rotation);
    DatasetRecord r;
    r.index = index;
    r.rotation = rotation;
    r.reading = array_reading(posed, cfg, *posed.find_array(sel.array));
    r.left = rasterize_view(posed, *posed.find_camera(sel.left_camera));
    r.right = rasterize_view(posed, *posed.find_camera(sel.right_camera));
    return r;
}

std::vector<DatasetRecord> generate_dataset(const RoomScene& scene, const PropagationConfig& cfg, size_t n,
                                            std::uint64_t seed, const DatasetSelection& sel_in)
{
    if (n == 0)
        fail(Errc::Validation, "dataset size must be at least 1");
    const DatasetSelection sel = resolve_selection(scene, sel_in);
    const auto rotations = draw_rotations(n, seed);
    std::vector<DatasetRecord> out(n);
    PropagationConfig inner = cfg;
    inner.threads = 1;
    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<size_t>(workers, n));
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (size_t i = next++; i < n; i = next++) {
            try {
                out[i] = make_record(scene, inner, sel, i, rotations[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err)
                    err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
    return out;
}

DatasetManifest make_manifest(const RoomScene& scene, const std::vector<DatasetRecord>& records, std::uint64_t seed,
                              const DatasetSelection& sel)
{
    DatasetManifest m;
    m.count = records.size();
    m.seed = seed;
    m.scene_hash = fnv1a_hex(scene_to_json(scene).dump());
    m.selection = resolve_selection(scene, sel);
    if (!scene.sources.empty())
        m.frequency = scene.sources.front().frequency;
    const ReceiveArray* a = scene.find_array(m.selection.array);
    m.rows = a->rows;
    m.cols = a->cols;
    for (const auto& r : records)
        m.rotations.push_back(r.rotation);
    return m;
}

std::string photo_name(size_t index, char camera)
{
    return std::to_string(index) + "_" + camera + ".png";
}

Json manifest_to_json(const DatasetManifest& m)
{
    Json recs = Json::array();
    for (size_t i = 0; i < m.rotations.size(); ++i) {
        Json r{{"index", i}, {"rotation", Json::array({m.rotations[i].yaw, m.rotations[i].pitch, m.rotations[i].roll})}};
        if (!m.split.empty())
            r["split"] = m.split[i];
        recs.push_back(r);
    }
    Json j{{"format_version", m.format_version},
           {"count", m.count},
           {"seed", m.seed},
           {"scene_hash", m.scene_hash},
           {"frequency_hz", m.frequency},
           {"array", {{"id", m.selection.array}, {"rows", m.rows}, {"cols", m.cols}}},
           {"object", m.selection.object},
           {"cameras", {{"L", m.selection.left_camera}, {"R", m.selection.right_camera}}},
           {"readings", {{"file", "readings.bin"}, {"dtype", "float64-le"}, {"layout", "record,row,col,(re,im)"}}},
           {"photos", {{"dir", "photos"}, {"pattern", "{index}_{L|R}.png"}, {"width", 64}, {"height", 64}}},
           {"noise", m.noise},
           {"records", recs}};
    if (!m.split.empty())
        j["split"] = {{"train_fraction", m.train_fraction}, {"seed", m.split_seed}};
    return j;
}

DatasetManifest manifest_from_json(const Json& j)
{
    DatasetManifest m;
    try {
        m.format_version = j.at("format_version").get<int>();
        m.count = j.at("count").get<size_t>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.scene_hash = j.at("scene_hash").get<std::string>();
        m.frequency = j.at("frequency_hz").get<double>();
        m.selection.array = j.at("array").at("id").get<std::string>();
        m.rows = j.at("array").at("rows").get<int>();
        m.cols = j.at("array").at("cols").get<int>();
        m.selection.object = j.at("object").get<std::string>();
        m.selection.left_camera = j.at("cameras").at("L").get<std::string>();
        m.selection.right_camera = j.at("cameras").at("R").get<std::string>();
        m.noise = j.value("noise", Json());
        bool has_split = j.contains("split");
        if (has_split) {
            m.train_fraction = j.at("split").at("train_fraction").get<double>();
            m.split_seed = j.at("split").at("seed").get<std::uint64_t>();
        }
        for (const auto& r : j.at("records")) {
            const auto& a = r.at("rotation");
            m.rotations.push_back(EulerAngles{a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()});
            if (has_split)
                m.split.push_back(r.at("split").get<std::string>());
        }
    } catch (const Json::exception& e) {
        fail(Errc::CorruptManifest, std::string("manifest: ") + e.what());
    }
    if (m.format_version != 1 || m.rows <= 0 || m.cols <= 0)
        fail(Errc::CorruptManifest, "manifest has an unsupported version or array shape");
    if (m.rotations.size() != m.count)
        fail(Errc::SizeMismatch, "manifest count disagrees with its record list");
    for (const auto& s : m.split)
        if (s != "train" && s != "test")
            fail(Errc::CorruptManifest, "split labels must be train or test");
    return m;
}

void write_manifest(const DatasetManifest& m, const std::string& dir)
{
    write_text_file((fs::path(dir) / "manifest.json").string(), manifest_to_json(m).dump(2) + "\n");
}

DatasetManifest read_manifest(const std::string& dir)
{
    const auto path = (fs::path(dir) / "manifest.json").string();
    if (!fs::exists(path))
        fail(Errc::CorruptManifest, "missing " + path);
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const Json::parse_error& e) {
        fail(Errc::CorruptManifest, path + ": " + e.what());
    }
    return manifest_from_json(j);
}

namespace {

void put_f64_le(std::uint8_t* p, double d)
{
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    for (int i = 0; i < 8; ++i)
        p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

double get_f64_le(const std::uint8_t* p)
{
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

} // namespace

void write_dataset(const std::vector<DatasetRecord>& records, const DatasetManifest& manifest, const std::string& dir)
{
    if (manifest.count != records.size())
        fail(Errc::SizeMismatch, "manifest count disagrees with the record list");
    std::error_code ec;
    fs::create_directories(fs::path(dir) / "photos", ec);
    if (ec)
        fail(Errc::Io, "cannot create " + dir + ": " + ec.message());
    const size_t per = static_cast<size_t>(manifest.rows) * manifest.cols;
    std::vector<std::uint8_t> bytes(records.size() * per * 16);
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& rd = records[i].reading;
        if (rd.rows != manifest.rows || rd.cols != manifest.cols || rd.data.size() != per)
            fail(Errc::SizeMismatch, "record " + std::to_string(i) + " has the wrong reading shape");
        for (size_t k = 0; k < per; ++k) {
            put_f64_le(&bytes[(i * per + k) * 16], rd.data[k].real());
            put_f64_le(&bytes[(i * per + k) * 16 + 8], rd.data[k].imag());
        }
        write_png((fs::path(dir) / "photos" / photo_name(i, 'L')).string(), records[i].left);
        write_png((fs::path(dir) / "photos" / photo_name(i, 'R')).string(), records[i].right);
    }
    std::ofstream out(fs::path(dir) / "readings.bin", std::ios::binary);
    if (!out || !out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size())))
        fail(Errc::Io, "cannot write readings.bin");
    out.close();
    write_manifest(manifest, dir);
}

Dataset read_dataset(const std::string& dir, bool load_photos)
{
    Dataset ds;
    ds.manifest = read_manifest(dir);
    const auto& m = ds.manifest;
    const size_t per = static_cast<size_t>(m.rows) * m.cols;
    const auto bin = fs::path(dir) / "readings.bin";
    std::error_code ec;
    const auto size = fs::file_size(bin, ec);
    if (ec)
        fail(Errc::SizeMismatch, "missing readings.bin");
    if (size != m.count * per * 16)
        fail(Errc::SizeMismatch, "readings.bin holds " + std::to_string(size) + " bytes, expected " +
                                     std::to_string(m.count * per * 16));
    std::vector<std::uint8_t> bytes(size);
    std::ifstream in(bin, std::ios::binary);
    if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size)))
        fail(Errc::Io, "cannot read readings.bin");
    ds.records.resize(m.count);
    for (size_t i = 0; i < m.count; ++i) {
        auto& r = ds.records[i];
        r.index = i;
        r.rotation = m.rotations[i];
        r.reading.rows = m.rows;
        r.reading.cols = m.cols;
        r.reading.data.resize(per);
        for (size_t k = 0; k < per; ++k)
            r.reading.data[k] = Complex(get_f64_le(&bytes[(i * per + k) * 16]), get_f64_le(&bytes[(i * per + k) * 16 + 8]));
        if (load_photos) {
            const auto l = fs::path(dir) / "photos" / photo_name(i, 'L');
            const auto rr = fs::path(dir) / "photos" / photo_name(i, 'R');
            if (!fs::exists(l) || !fs::exists(rr))
                fail(Errc::SizeMismatch, "photo missing for record " + std::to_string(i));
            r.left = read_png(l.string());
            r.right = read_png(rr.string());
        }
    }
    return ds;
}

DatasetManifest split_dataset(const DatasetManifest& manifest, double train_fraction, std::uint64_t seed)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        fail(Errc::Validation, "train fraction must lie strictly between 0 and 1");
    DatasetManifest m = manifest;
    const size_t n = m.count;
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i)
        perm[i] = i;
    SplitMix64 rng(seed);
    for (size_t i = n; i > 1; --i) {
        const size_t j = static_cast<size_t>(rng.next() % i);
        std::swap(perm[i - 1], perm[j]);
    }
    const size_t n_train = static_cast<size_t>(std::llround(train_fraction * static_cast<double>(n)));
    m.split.assign(n, "test");
    for (size_t k = 0; k < n_train; ++k)
        m.split[perm[k]] = "train";
    m.train_fraction = train_fraction;
    m.split_seed = seed;
    return m;
}

std::vector<size_t> split_indices(const DatasetManifest& m, const std::string& side)
{
    std::vector<size_t> out;
    for (size_t i = 0; i < m.split.size(); ++i)
        if (m.split[i] == side)
            out.push_back(i);
    return out;
}

} // namespace wcopy
