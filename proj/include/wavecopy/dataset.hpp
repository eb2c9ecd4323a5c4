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
#include "wavecopy/image.hpp"
#include "wavecopy/io.hpp"
#include "wavecopy/scene.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wcopy {

struct DatasetRecord {
    size_t index{0};
    EulerAngles rotation;
    RfReading reading;
    ImageU8 left;
    ImageU8 right;
};

/// Which scene members a dataset draws from. Empty ids pick the first of each kind
/// (cameras: the first two).
struct DatasetSelection {
    std::string object;
    std::string array;
    std::string left_camera;
    std::string right_camera;
};

struct DatasetManifest {
    int format_version{1};
    size_t count{0};
    std::uint64_t seed{0};
    std::string scene_hash;
    double frequency{kDefaultFrequency};
    int rows{10};
    int cols{10};
    DatasetSelection selection;
    std::vector<EulerAngles> rotations;
    std::vector<std::string> split; // "train"/"test" per record, empty until split
    double train_fraction{0.0};
    std::uint64_t split_seed{0};
    Json noise; // reserved for an interference/noise model; null means none applied
};

/// Uniform Euler draw in [-pi, pi)^3 for record `index` under `seed`.
std::vector<EulerAngles> draw_rotations(size_t n, std::uint64_t seed);

DatasetSelection resolve_selection(const RoomScene& scene, const DatasetSelection& sel);

/// Deterministic in (scene, n, seed) regardless of the worker count.
std::vector<DatasetRecord> generate_dataset(const RoomScene& scene, const PropagationConfig& cfg, size_t n,
                                            std::uint64_t seed, const DatasetSelection& sel = {});

/// The record for explicit angles (shares the code path used by generate_dataset).
DatasetRecord make_record(const RoomScene& scene, const PropagationConfig& cfg, const DatasetSelection& sel,
                          size_t index, const EulerAngles& rotation);

DatasetManifest make_manifest(const RoomScene& scene, const std::vector<DatasetRecord>& records,
                              std::uint64_t seed, const DatasetSelection& sel);

Json manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const Json& j); // throws CorruptManifest

/// Layout: manifest.json, readings.bin (n x rows x cols x (re, im) f64 LE), photos/{i}_L.png, photos/{i}_R.png.
void write_dataset(const std::vector<DatasetRecord>& records, const DatasetManifest& manifest, const std::string& dir);

struct Dataset {
    DatasetManifest manifest;
    std::vector<DatasetRecord> records;
};

/// Throws CorruptManifest or SizeMismatch.
Dataset read_dataset(const std::string& dir, bool load_photos = true);
DatasetManifest read_manifest(const std::string& dir);
void write_manifest(const DatasetManifest& m, const std::string& dir);

/// Seeded Fisher-Yates shuffle; the first round(fraction * n) shuffled indices train.
DatasetManifest split_dataset(const DatasetManifest& manifest, double train_fraction, std::uint64_t seed);

std::vector<size_t> split_indices(const DatasetManifest& m, const std::string& side);

std::string photo_name(size_t index, char camera);

} // namespace wcopy
