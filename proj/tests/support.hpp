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

#include "wavecopy/geometry.hpp"
#include "wavecopy/image.hpp"
#include "wavecopy/em.hpp"
#include "wavecopy/pwe.hpp"
#include "wavecopy/sdm.hpp"

#include <algorithm>
#include <complex>
#include <filesystem>
#include <string>

namespace wcopy::testing {

inline bool near(const Vec3& a, const Vec3& b, double tol) { return norm(a - b) <= tol; }

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    const auto p = std::filesystem::temp_directory_path() / ("wavecopy_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

/// Pseudo-random RGB image pair: b is a clamped noisy copy of a with noise amplitude `amp`.
/// The same generator is mirrored in the Python script that produced the SSIM references.
inline std::pair<ImageU8, ImageU8> noisy_pair(std::uint64_t seed, int amp, int height = 24, int width = 32)
{
    ImageU8 a(height, width), b(height, width);
    SplitMix64 rng(seed);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            for (int c = 0; c < 3; ++c) {
                const int av = static_cast<int>(rng.next() % 256);
                const int noise = static_cast<int>(rng.next() % static_cast<std::uint64_t>(2 * amp + 1)) - amp;
                a.pixel(y, x)[c] = static_cast<std::uint8_t>(av);
                b.pixel(y, x)[c] = static_cast<std::uint8_t>(std::clamp(av + noise, 0, 255));
            }
    return {a, b};
}

/// One 16x16 tile at the origin facing +z (u = +x, v = +y) lit by a single point source.
inline RoomScene single_tile_scene(const Vec3& source)
{
    RoomScene s;
    s.codebooks["2bit"] = Codebook::two_bit();
    s.tiles.push_back(make_tile("T", {0, 0, 0}, {0, 0, 1}, {0, 1, 0}));
    s.sources.push_back(PointSource{"tx", source, {1.0, 0.0}, kDefaultFrequency});
    return s;
}

/// Field re-radiated by the tiles only (direct illumination removed).
inline std::vector<Complex> scattered(const RoomScene& s, const std::vector<Vec3>& pts)
{
    const PropagationConfig cfg = default_propagation();
    auto tot = compute_field(s, cfg, pts);
    const auto inc = incident_field(s.sources, pts, cfg.k, s);
    for (size_t i = 0; i < pts.size(); ++i)
        tot[i] -= inc[i];
    return tot;
}

/// Far-field scan in the u-z plane at 1 degree steps over [-89, 89] for a tile steered
/// from normal incidence toward `theta_deg`. Returns the angle of the strongest sample.
inline int steer_scan_peak(double theta_deg, bool continuous)
{
    const double R = 200.0, Rs = 500.0;
    RoomScene s = single_tile_scene({0, 0, Rs});
    const double th = theta_deg * kPi / 180.0;
    const Callback cb = Callback::steer({0, 0, -1}, {std::sin(th), 0, std::cos(th)});
    s = deploy(s, {TileCallback{"T", cb}}, wavenumber(), continuous);
    std::vector<Vec3> probes;
    for (int a = -89; a <= 89; ++a) {
        const double t = a * kPi / 180.0;
        probes.push_back({R * std::sin(t), 0, R * std::cos(t)});
    }
    const auto f = scattered(s, probes);
    size_t best = 0;
    for (size_t i = 1; i < f.size(); ++i)
        if (std::abs(f[i]) > std::abs(f[best]))
            best = i;
    return static_cast<int>(best) - 89;
}

/// Reference focusing geometry: oblique source and an off-axis focal point in front of the tile.
inline Vec3 focus_source() { return {-0.9, 0.2, 1.3}; }
inline Vec3 focus_point() { return {0.5, -0.3, 1.1}; }

inline RoomScene focused_tile(bool continuous)
{
    RoomScene s = single_tile_scene(focus_source());
    return deploy(s, {TileCallback{"T", Callback::focus(focus_source(), focus_point())}}, wavenumber(), continuous);
}

} // namespace wcopy::testing
