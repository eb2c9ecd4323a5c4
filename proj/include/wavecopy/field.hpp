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

#include <complex>
#include <vector>

namespace wcopy {

/// Time-harmonic phasor with the e^{-jkr} convention for outgoing waves.
using Complex = std::complex<double>;

/// A receive-array snapshot, row-major.
struct RfReading {
    int rows{0};
    int cols{0};
    std::vector<Complex> data;

    const Complex& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
    friend bool operator==(const RfReading&, const RfReading&) = default;
};

} // namespace wcopy
