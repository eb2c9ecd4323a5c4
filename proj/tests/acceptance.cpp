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

// Acceptance suite: one PASS/FAIL line per primary criterion. Tolerances are fixed here.

#include "oracles.hpp"
#include "references.hpp"
#include "support.hpp"

#include "wavecopy/dataset.hpp"
#include "wavecopy/error.hpp"
#include "wavecopy/metrics.hpp"
#include "wavecopy/scenario.hpp"
#include "wavecopy/transport.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <thread>

using namespace wcopy;
using namespace wcopy::testing;
namespace fs = std::filesystem;

namespace {

constexpr double kFreeSpaceRelTol = 1e-12;
constexpr int kSteerTolDeg = 2;
constexpr double kFocusSpreadRad = 1e-9;
constexpr double kFocusQuantRatio = 0.6;
constexpr double kDisjointSlack = 0.10;
constexpr double kCopyContinuous = 0.9;
constexpr double kCopyQuantized = 0.7;
constexpr std::uint64_t kCopySeed = 1;
constexpr double kFrameMedianUs = 20.0;
constexpr double kPsnrUnitOffset = 48.1308;
constexpr double kPsnrTol = 1e-3;
constexpr double kSsimTol = 1e-6;
constexpr size_t kDatasetSize = 1000;
constexpr std::uint64_t kDatasetSeed = 2024;

struct Outcome {
    bool pass{false};
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line.precision(3);
    line << (o.pass && (limit_s <= 0 || secs < limit_s) ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << " ["
         << secs << " s";
    if (limit_s > 0) {
        line << ", limit " << limit_s << " s";
        if (secs >= limit_s)
            o.pass = false;
    }
    line << "]";
    if (!o.pass)
        ++failures;
    std::printf("%s\n", line.str().c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome free_space()
{
    RoomScene s;
    s.sources.push_back(PointSource{"s", {0.1, -0.2, 0.05}, {1, 0}, kDefaultFrequency});
    s.arrays.push_back(make_planar_array("a", {1.7, 0.3, -0.4}, {0, 1, 0}, {0, 0.6, 0.8}));
    const auto cfg = default_propagation();
    const RfReading r = array_reading(s, cfg, s.arrays[0]);
    double worst = 0.0;
    for (size_t i = 0; i < r.data.size(); ++i) {
        const double d = distance(s.sources[0].position, s.arrays[0].elements[i]);
        const Complex want = std::polar(1.0 / (4 * kPi * d), -cfg.k * d);
        worst = std::max(worst, std::abs(r.data[i] - want) / std::abs(want));
    }
    return {worst <= kFreeSpaceRelTol, fmt("max relative error %.2e over 100 elements (tol %.0e)", worst, kFreeSpaceRelTol)};
}

Outcome steering()
{
    bool ok = true;
    std::string detail;
    for (int theta : {0, 15, 30, 45}) {
        const int q = steer_scan_peak(theta, false), c = steer_scan_peak(theta, true);
        ok = ok && std::abs(q - theta) <= kSteerTolDeg && std::abs(c - theta) <= kSteerTolDeg;
        detail += fmt("%g->%g/%g ", theta, q, c);
    }
    return {ok, "target->peak 2-bit/continuous deg: " + detail + fmt("(tol +-%g deg)", kSteerTolDeg)};
}

Outcome focusing()
{
    const double k = wavenumber();
    const RoomScene s = focused_tile(true);
    const SdmTile& t = s.tiles.front();
    std::vector<Complex> inc;
    for (const auto& c : t.cell_positions())
        inc.push_back(green(distance(focus_source(), c), k));
    std::vector<double> phases;
    for (const auto& p : reflect(t, inc))
        phases.push_back(std::arg(radiate({p}, {focus_point()}, k)[0]));
    double spread = 0.0;
    for (double ph : phases)
        spread = std::max(spread, std::abs(std::remainder(ph - phases.front(), 2 * kPi)));
    const double q = std::abs(scattered(focused_tile(false), {focus_point()})[0]);
    const double c = std::abs(scattered(s, {focus_point()})[0]);
    return {spread < kFocusSpreadRad && q >= kFocusQuantRatio * c,
            fmt("phase spread %.2e rad (tol %.0e), 2-bit/continuous %.3f (min %.1f)", spread, kFocusSpreadRad, q / c,
                kFocusQuantRatio)};
}

Outcome routing()
{
    int route_bad = 0, route_cmp = 0, feasible = 0, infeasible_bad = 0, over = 0;
    double worst = 1.0;
    std::string seeds;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto rg = random_graph(seed, false);
        for (const auto& c : rg.commands) {
            const auto want = oracle_route(rg.graph, c.src, c.dst, kDefaultMaxHops);
            ++route_cmp;
            try {
                const auto got = route(rg.graph, c.src, c.dst);
                if (!want || !(got == *want))
                    ++route_bad;
            } catch (const Error&) {
                if (want)
                    ++route_bad;
            }
        }
        const auto best = oracle_disjoint(rg.graph, rg.commands, kDefaultMaxHops);
        try {
            const auto rs = route_disjoint(rg.graph, rg.commands);
            if (!best) {
                ++infeasible_bad;
                continue;
            }
            ++feasible;
            const double ratio = (rs[0].length + rs[1].length) / *best;
            worst = std::max(worst, ratio);
            if (ratio > 1.0 + kDisjointSlack) {
                ++over;
                seeds += " " + std::to_string(seed);
            }
        } catch (const Error&) {
            if (best)
                ++infeasible_bad;
        }
    }
    std::string d = fmt("route mismatches %g/%g; disjoint: %g feasible graphs, %g feasibility disagreements, ", route_bad,
                        route_cmp, feasible, infeasible_bad) +
                    fmt("%g over +%g%% (worst ratio %.3f)", over, 100 * kDisjointSlack, worst);
    if (!seeds.empty())
        d += ", seeds:" + seeds;
    return {route_bad == 0 && infeasible_bad == 0 && over == 0, d};
}

Outcome copy()
{
    const auto r = run_copy(make_two_room_scene(), default_propagation(), kCopySeed);
    return {r.fidelity_continuous >= kCopyContinuous && r.fidelity_quantized >= kCopyQuantized,
            fmt("seed %g: continuous %.4f (min %.1f), 2-bit %.4f", static_cast<double>(kCopySeed), r.fidelity_continuous,
                kCopyContinuous, r.fidelity_quantized) +
                fmt(" (min %.1f), hops %g", kCopyQuantized, r.route.hops())};
}

WireFrame random_frame(SplitMix64& rng)
{
    WireFrame f;
    f.seq = static_cast<std::uint32_t>(rng.next());
    f.rows = static_cast<std::uint16_t>(1 + rng.next() % 16);
    f.cols = static_cast<std::uint16_t>(1 + rng.next() % 16);
    for (int i = 0; i < f.rows * f.cols; ++i)
        f.samples.emplace_back(1e3 * (rng.uniform() - 0.5), 1e-3 * (rng.uniform() - 0.5));
    return f;
}

Outcome transport()
{
    SplitMix64 rng(99);
    int roundtrip_bad = 0, undetected = 0, flips = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto f = random_frame(rng);
        const auto bytes = encode_frame(f);
        if (!(decode_frame(bytes) == f))
            ++roundtrip_bad;
        for (int t = 0; t < 8; ++t) {
            auto bad = bytes;
            const size_t bit = rng.next() % (bytes.size() * 8);
            bad[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            ++flips;
            try {
                decode_frame(bad);
                ++undetected;
            } catch (const Error&) {
            }
        }
    }

    WavefrontSampler sampler;
    std::vector<WireFrame> frames;
    for (int i = 0; i < 1000; ++i) {
        RfReading r{10, 10, {}};
        for (int j = 0; j < 100; ++j)
            r.data.emplace_back(rng.uniform(), rng.uniform());
        frames.push_back(sampler.sample(r));
    }
    TcpListener listener(0);
    std::vector<WireFrame> got;
    SessionStats rx;
    std::thread server([&] {
        auto s = listener.accept();
        rx = receive_frames(s, [&](const WireFrame& f) { got.push_back(f); });
    });
    auto client = TcpStream::connect("127.0.0.1", listener.port());
    send_frames(client, frames);
    server.join();
    const bool loop_ok = got == frames && rx.reader.lost == 0 && rx.reader.corrupted == 0;

    std::vector<double> enc, dec;
    for (int i = 0; i < 2001; ++i) {
        const auto& f = frames[static_cast<size_t>(i) % frames.size()];
        const auto t0 = std::chrono::steady_clock::now();
        const auto b = encode_frame(f);
        const auto t1 = std::chrono::steady_clock::now();
        const auto g = decode_frame(b);
        const auto t2 = std::chrono::steady_clock::now();
        if (g.seq != f.seq)
            ++roundtrip_bad;
        enc.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        dec.push_back(std::chrono::duration<double, std::micro>(t2 - t1).count());
    }
    const double me = median(enc), md = median(dec);
    return {roundtrip_bad == 0 && undetected == 0 && loop_ok && me < kFrameMedianUs && md < kFrameMedianUs,
            fmt("roundtrip failures %g/1000, undetected flips %g/%g, ", roundtrip_bad, undetected, flips) +
                fmt("TCP loopback %g/1000 frames lost %g, ", static_cast<double>(got.size()),
                    static_cast<double>(rx.reader.lost)) +
                fmt("10x10 median encode %.2f us decode %.2f us (limit %g us)", me, md, kFrameMedianUs)};
}

Outcome metrics()
{
    const double p = psnr(ImageU8(64, 64, 17), ImageU8(64, 64, 18));
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto [a, b] = noisy_pair(1000 + static_cast<std::uint64_t>(i), reference_amp(i));
        worst = std::max(worst, std::abs(ssim(a, b) - kSkimageSsim[static_cast<size_t>(i)]));
    }
    const auto v = latency_budget(LatencyBudget::motion_to_photon());
    return {std::abs(p - kPsnrUnitOffset) <= kPsnrTol && worst <= kSsimTol && v.min_total_ms == 8.0 &&
                v.max_total_ms == 39.0,
            fmt("PSNR %.4f dB (want %.4f +- %.0e), ", p, kPsnrUnitOffset, kPsnrTol) +
                fmt("SSIM max |diff| vs scikit-image %.2e over 20 pairs (tol %.0e), ", worst, kSsimTol) +
                fmt("budget min %g ms max %g ms", v.min_total_ms, v.max_total_ms)};
}

Outcome dataset()
{
    const RoomScene scene = make_training_scene();
    const auto root = scratch_dir("acceptance_dataset");
    auto cfg = default_propagation();
    for (const char* sub : {"a", "b"}) {
        cfg.threads = sub[0] == 'a' ? 1 : 2;
        const auto records = generate_dataset(scene, cfg, kDatasetSize, kDatasetSeed);
        write_dataset(records, split_dataset(make_manifest(scene, records, kDatasetSeed, {}), 0.9, kDatasetSeed),
                      (root / sub).string());
    }
    size_t files = 0, differing = 0;
    for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
        if (!e.is_regular_file())
            continue;
        ++files;
        if (slurp(e.path()) != slurp(root / "b" / fs::relative(e.path(), root / "a")))
            ++differing;
    }
    const auto bin = fs::file_size(root / "a" / "readings.bin");
    const auto m = read_manifest((root / "a").string());
    const size_t train = split_indices(m, "train").size(), test = split_indices(m, "test").size();
    fs::remove_all(root);
    return {differing == 0 && files == 2 * kDatasetSize + 2 && bin == 1600000 && train == 900 && test == 100,
            fmt("n=%g seed %g: %g files, %g differ between runs, ", static_cast<double>(kDatasetSize),
                static_cast<double>(kDatasetSeed), static_cast<double>(files), static_cast<double>(differing)) +
                fmt("readings.bin %g bytes, split %g/%g", static_cast<double>(bin), static_cast<double>(train),
                    static_cast<double>(test))};
}

} // namespace

int main()
{
    criterion("free-space propagation", 1.0, free_space);
    criterion("steering", 30.0, steering);
    criterion("focusing", 30.0, focusing);
    criterion("routing", 60.0, routing);
    criterion("two-room copy", 300.0, copy);
    criterion("transport", 30.0, transport);
    criterion("metrics", 0.0, metrics);
    criterion("dataset", 0.0, dataset);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
