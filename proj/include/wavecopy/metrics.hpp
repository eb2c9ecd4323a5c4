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
#include "wavecopy/image.hpp"

#include <string>
#include <vector>

namespace wcopy {

/// 10 log10(255^2 / MSE) over all pixels and channels; +inf for identical images.
double psnr(const ImageU8& a, const ImageU8& b);

/// Mean SSIM (11x11 Gaussian window, sigma 1.5, K1 0.01, K2 0.03, L 255) over windows
/// fully inside the image, averaged over the three channels.
double ssim(const ImageU8& a, const ImageU8& b);

/// |<f, g>| / (|f| |g|). Throws ZeroField if either vector is zero.
double field_fidelity(const std::vector<Complex>& f, const std::vector<Complex>& g);

struct LatencyComponent {
    std::string name;
    double min_ms{0.0};
    double max_ms{0.0};
};

struct LatencyBudget {
    std::vector<LatencyComponent> components;
    static LatencyBudget motion_to_photon(bool with_network = false);
};

struct LatencyVerdict {
    double min_total_ms{0.0};
    double max_total_ms{0.0};
    bool best_case_ok{false};  // min total within the threshold
    bool guaranteed_ok{false}; // max total within the threshold
};

inline constexpr double kMotionSicknessThresholdMs = 20.0;

LatencyVerdict latency_budget(const LatencyBudget& budget, double threshold_ms = kMotionSicknessThresholdMs);

struct Summary {
    double min{0.0}, q1{0.0}, median{0.0}, q3{0.0}, max{0.0};
    size_t count{0};          // finite values summarized
    size_t excluded_inf{0};   // +inf sentinels left out
};

/// Five-number summary with linear-interpolation quantiles (position q * (n - 1)).
Summary summarize(const std::vector<double>& values);

} // namespace wcopy
