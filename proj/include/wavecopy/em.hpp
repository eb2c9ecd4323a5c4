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

#include "wavecopy/field.hpp"
#include "wavecopy/scene.hpp"

#include <string>
#include <vector>

namespace wcopy {

/// Discretized Huygens secondary source.
struct PatchSource {
    Vec3 position;
    Vec3 normal{0, 0, 1};
    double area{0.0};
    Complex amplitude{0.0, 0.0};
};

struct PropagationConfig {
    double k{wavenumber()};
    int max_bounce{3};
    double patch_side{0.05 * wavelength()}; // lambda/20: object scattering converges to about 1% here
    Complex wall_reflectivity{0.0, 0.0}; // for non-PEC walls; PEC walls always reflect with -1
    unsigned threads{0};                 // 0 = hardware concurrency

    double lambda() const { return 2.0 * kPi / k; }
};

PropagationConfig default_propagation(double frequency = kDefaultFrequency);

/// e^{-jkr} / (4 pi r). Throws ZeroDistance for r <= 1e-12 m.
Complex green(double r, double k);

/// Uniform grid tiling the rectangle; ceil(extent / side) patches per axis.
std::vector<PatchSource> discretize_rectangle(const Rectangle& rect, double target_side);

/// Free-space re-radiation of patches, no occlusion:
/// E(q) = sum A (k dA / 2 pi) max(cos chi, 0) e^{-jkr} / r.
std::vector<Complex> radiate(const std::vector<PatchSource>& patches, const std::vector<Vec3>& points, double k);

/// Direct source illumination with line-of-sight masking.
std::vector<Complex> incident_field(const std::vector<PointSource>& sources, const std::vector<Vec3>& points,
                                    double k, const RoomScene& scene);

/// Full multi-bounce field: sources -> up to max_bounce scatterers -> point.
std::vector<Complex> compute_field(const RoomScene& scene, const PropagationConfig& cfg,
                                   const std::vector<Vec3>& points);

RfReading array_reading(const RoomScene& scene, const PropagationConfig& cfg, const ReceiveArray& array);

/// Field arriving at each tile cell, summed over every bounce order at which the tile
/// can still re-radiate (1..max_bounce), keyed by tile id.
std::map<std::string, std::vector<Complex>> tile_incident_fields(const RoomScene& scene,
                                                                 const PropagationConfig& cfg);

/// Patch set re-radiated by an external agent, e.g. a resynthesized tile surface.
struct InjectedSurface {
    std::string exclude_id; // rectangle the patches sit on (ignored for occlusion)
    std::vector<PatchSource> patches;
};

/// compute_field plus the line-of-sight radiation of the injected surfaces. Injected
/// waves are not scattered further.
std::vector<Complex> compute_field_with(const RoomScene& scene, const PropagationConfig& cfg,
                                        const std::vector<Vec3>& points,
                                        const std::vector<InjectedSurface>& injected);

} // namespace wcopy
