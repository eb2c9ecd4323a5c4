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

#include "wavecopy/em.hpp"
#include "wavecopy/scene.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace wcopy {

enum class CallbackKind { Steer, Split, Absorb, PhaseAlter, Focus };

/// A tile function request. Directions are propagation directions: `incident` points
/// toward the tile, targets point away from it.
struct Callback {
    CallbackKind kind{CallbackKind::Absorb};
    Vec3 incident;
    Vec3 target;
    Vec3 target2;
    Vec3 source_point;
    Vec3 focal_point;
    double phase_offset{0.0};
    std::shared_ptr<const Callback> base; // PHASE_ALTER only; null means a flat profile

    static Callback steer(const Vec3& incident, const Vec3& target);
    static Callback split(const Vec3& incident, const Vec3& target1, const Vec3& target2);
    static Callback absorb();
    static Callback focus(const Vec3& source_point, const Vec3& focal_point);
    static Callback phase_alter(double offset, std::optional<Callback> base = std::nullopt);
};

bool operator==(const Callback& a, const Callback& b);

const char* callback_name(CallbackKind kind);

/// Generalized-Snell ramp k (d_inc - d_out) . (cell - center), in [0, 2 pi).
std::vector<double> steer_profile(const SdmTile& tile, const Vec3& incident, const Vec3& target, double k);

/// Phase conjugation k (|s - cell| + |cell - f|), in [0, 2 pi).
std::vector<double> focus_profile(const SdmTile& tile, const Vec3& source_point, const Vec3& focal_point, double k);

/// arg(e^{j phi1} + e^{j phi2}) of the two steering ramps, in [0, 2 pi).
std::vector<double> split_profile(const SdmTile& tile, const Vec3& incident, const Vec3& target1,
                                  const Vec3& target2, double k);

/// Nearest phase state per cell; equidistant phases resolve to the lower state index.
std::vector<int> quantize_profile(const std::vector<double>& profile, const Codebook& book);

/// Continuous phase profile for a callback, or nullopt for ABSORB.
std::optional<std::vector<double>> callback_profile(const Callback& cb, const SdmTile& tile, double k);

std::vector<int> codebook_lookup(const Callback& cb, const SdmTile& tile, const Codebook& book, double k);

TileDeployment deployment_from_states(const std::vector<int>& states, const Codebook& book);

/// Ideal deployment: |gamma| = `magnitude`, phase = profile.
TileDeployment continuous_deployment(const std::vector<double>& profile, double magnitude);

/// Departing Huygens patches of a deployed tile: gamma(cell) * incident(cell).
std::vector<PatchSource> reflect(const SdmTile& tile, const std::vector<Complex>& incident);

/// Sebastiano Vigna's splitmix64 generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Adds a keyed per-cell offset modulo the number of phase states; non-phase states pass through.
std::vector<int> scramble_config(const std::vector<int>& states, std::uint64_t key, const Codebook& book);
std::vector<int> descramble_config(const std::vector<int>& states, std::uint64_t key, const Codebook& book);

} // namespace wcopy
