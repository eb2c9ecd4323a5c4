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
#include "wavecopy/geometry.hpp"
#include "wavecopy/image.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wcopy {

inline constexpr double kDefaultFrequency = 5e9; // Hz

inline double wavelength(double frequency = kDefaultFrequency) { return kSpeedOfLight / frequency; }
inline double wavenumber(double frequency = kDefaultFrequency) { return 2.0 * kPi * frequency / kSpeedOfLight; }

struct PointSource {
    std::string id;
    Vec3 position;
    Complex amplitude{1.0, 0.0};
    double frequency{kDefaultFrequency};
};

struct ReceiveArray {
    std::string id;
    int rows{10};
    int cols{10};
    std::vector<Vec3> elements; // row-major, rows * cols

    Vec3 centroid() const;
};

/// Planar rows x cols array centered at `center`; column index runs along `col_axis`,
/// row index along `row_axis`. Spacing defaults to half a wavelength at 5 GHz.
ReceiveArray make_planar_array(std::string id, const Vec3& center, const Vec3& col_axis,
                               const Vec3& row_axis, int rows = 10, int cols = 10,
                               double spacing = 0.5 * wavelength());

struct Camera {
    std::string id;
    Vec3 position;
    Vec3 look_at;
    Vec3 up{0, 0, 1};
    double fov{0.7}; // horizontal, radians
    int width{64};
    int height{64};
};

struct ReflectorObject {
    std::string id;
    Vec3 pivot;
    EulerAngles rotation; // angles of the last rotate_object call
    std::vector<Rectangle> rects;
};

/// Reflection coefficient table. Every state with nonzero magnitude is a phase state;
/// `absorb_state` is the one with zero reflection (or -1 if the book has none).
struct Codebook {
    std::string id;
    std::vector<Complex> gamma;
    int absorb_state{-1};

    std::vector<int> phase_states() const;
    static Codebook two_bit(std::string id = "2bit");
};

/// Per-cell reflection coefficients of a configured tile. `states` is empty for
/// continuous-phase deployments that bypass the codebook.
struct TileDeployment {
    std::vector<int> states;
    std::vector<Complex> gamma;
    friend bool operator==(const TileDeployment&, const TileDeployment&) = default;
};

struct SdmTile {
    std::string id;
    Rectangle placement; // material is Sdm, tile_id = id
    int rows{16};
    int cols{16};
    double pitch{0.5 * wavelength()};
    std::string codebook{"2bit"};
    std::optional<TileDeployment> deployment;

    int cell_count() const { return rows * cols; }
    /// Cell centers, row-major; column index along placement.u, row index along placement.v.
    std::vector<Vec3> cell_positions() const;
};

SdmTile make_tile(std::string id, const Vec3& center, const Vec3& normal, const Vec3& up, int rows = 16,
                  int cols = 16, double pitch = 0.5 * wavelength(), std::string codebook = "2bit");

/// Named point used as a routing endpoint (user position, emitter position).
struct Endpoint {
    std::string id;
    Vec3 position;
};

/// Which endpoints a copy run ties together. Optional part of a scene file.
struct CopySpec {
    std::string source;      // object or endpoint id whose wavefront is copied
    std::string reference;   // array capturing the original wavefront
    std::string destination; // array receiving the copy
};

struct RoomScene {
    std::vector<Rectangle> walls;
    std::vector<SdmTile> tiles;
    std::vector<ReflectorObject> objects;
    std::vector<PointSource> sources;
    std::vector<ReceiveArray> arrays;
    std::vector<Camera> cameras;
    std::vector<Endpoint> endpoints;
    std::map<std::string, Codebook> codebooks;
    std::optional<CopySpec> copy;

    const SdmTile* find_tile(const std::string& id) const;
    SdmTile* find_tile(const std::string& id);
    const ReceiveArray* find_array(const std::string& id) const;
    const ReflectorObject* find_object(const std::string& id) const;
    const Camera* find_camera(const std::string& id) const;
    const Codebook& codebook_for(const SdmTile& tile) const;
};

/// Checks ids, frames, tile fit, array shapes and camera parameters. Throws Validation.
void validate_scene(const RoomScene& scene);

/// Rigid rotation of every rectangle about the pivot by R(yaw, pitch, roll).
ReflectorObject rotate_object(const ReflectorObject& obj, const EulerAngles& angles);

/// Occlusion test on the open segment pq. Rectangles whose plane contains exactly one
/// endpoint (within 1e-9 m) are ignored; grazing hits count as blocked.
bool los_visible(const Vec3& p, const Vec3& q, const RoomScene& scene, const std::set<std::string>& exclude = {});

/// Every rectangle of the scene that can block a ray: walls, tile placements, object faces.
std::vector<const Rectangle*> occluders(const RoomScene& scene);

/// Segment-vs-single-rectangle test with the same rules as los_visible.
bool segment_blocked(const Vec3& p, const Vec3& q, const Rectangle& rect);

inline constexpr int kPaletteSize = 8;
std::array<std::uint8_t, 3> palette_color(int index);

/// Flat-shaded pinhole render of the scene's reflector objects on a white background.
ImageU8 rasterize_view(const RoomScene& scene, const Camera& cam);

} // namespace wcopy
