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

#include "wavecopy/dataset.hpp"
#include "wavecopy/em.hpp"
#include "wavecopy/metrics.hpp"
#include "wavecopy/pwe.hpp"
#include "wavecopy/scene.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wcopy {

/// Seed used for the reference two-room copy run.
inline constexpr std::uint64_t kCanonicalCopySeed = 1;

/// Room 1 alone: object on the south wall, three baffled sources, receive array rx1, cameras L/R.
RoomScene make_training_scene();

/// Room 1 plus room 2 behind a dividing wall with a high window, tiles T1 and T2, arrays rx1 and rx2.
RoomScene make_two_room_scene();

struct ScenarioConfig {
    std::string scene_path;
    std::uint64_t seed{0};
    size_t dataset_size{1000};
    double split_fraction{0.9};
    int max_hops{kDefaultMaxHops};
    bool quantize{true};
    std::string out_dir;
};

struct TrainingDataSummary {
    DatasetManifest manifest;
    size_t train{0};
    size_t test{0};
};

TrainingDataSummary run_training_data(const RoomScene& scene, const PropagationConfig& cfg, const ScenarioConfig& sc);

struct CopyReport {
    WaveRoute route;
    std::vector<TileCallback> callbacks;
    EulerAngles rotation;
    RfReading reference;
    RfReading copy_quantized;
    RfReading copy_continuous;
    double fidelity_quantized{0.0};
    double fidelity_continuous{0.0};
};

/// Poses the copy source object with the seeded rotation, routes source -> destination,
/// compiles FOCUS callbacks, and compares the destination reading with the reference
/// reading taken while every tile absorbs.
CopyReport run_copy(const RoomScene& scene, const PropagationConfig& cfg, std::uint64_t seed,
                    int max_hops = kDefaultMaxHops);

Json copy_report_to_json(const CopyReport& r);

struct PairScore {
    std::string name;
    double psnr{0.0};
    double ssim{0.0};
};

struct EvaluationReport {
    std::vector<size_t> indices;
    std::vector<PairScore> scores;
    std::vector<PairScore> baseline; // fake i vs real sigma(i)
    Summary psnr, ssim, baseline_psnr, baseline_ssim;
};

/// Scores generated L images against the test-split ground truth. Fake images are looked
/// up as {i}_L.png in `fake_dir` or `fake_dir`/photos. Throws IndexMismatch.
EvaluationReport run_evaluate(const std::string& dataset_dir, const std::string& fake_dir, std::uint64_t seed);

/// Per-file PSNR/SSIM for every PNG name present in both directories. Throws IndexMismatch.
std::vector<PairScore> compare_dirs(const std::string& real_dir, const std::string& fake_dir);

std::string evaluation_csv(const EvaluationReport& r);
Json summary_to_json(const Summary& s);

} // namespace wcopy
