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

#include <cstdint>
#include <vector>

namespace wcopy {

/// Interleaved 8-bit RGB image, row-major.
struct ImageU8 {
    int height{0};
    int width{0};
    std::vector<std::uint8_t> data; // height * width * 3

    ImageU8() = default;
    ImageU8(int h, int w, std::uint8_t fill = 0)
        : height(h), width(w), data(static_cast<size_t>(h) * w * 3, fill)
    {
    }

    std::uint8_t* pixel(int r, int c) { return data.data() + (static_cast<size_t>(r) * width + c) * 3; }
    const std::uint8_t* pixel(int r, int c) const
    {
        return data.data() + (static_cast<size_t>(r) * width + c) * 3;
    }
    friend bool operator==(const ImageU8&, const ImageU8&) = default;
};

} // namespace wcopy
