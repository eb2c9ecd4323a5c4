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

#include "wavecopy/png.hpp"

#include "wavecopy/error.hpp"

#include <png.h>

#include <cstring>

namespace wcopy {

void write_png(const std::string& path, const ImageU8& img)
{
    if (img.height <= 0 || img.width <= 0 || img.data.size() != static_cast<size_t>(img.height) * img.width * 3)
        fail(Errc::Validation, "cannot encode an empty or malformed image");
    png_image im;
    std::memset(&im, 0, sizeof im);
    im.version = PNG_IMAGE_VERSION;
    im.width = static_cast<png_uint_32>(img.width);
    im.height = static_cast<png_uint_32>(img.height);
    im.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&im, path.c_str(), 0, img.data.data(), 0, nullptr))
        fail(Errc::Io, "cannot write " + path + ": " + im.message);
}

ImageU8 read_png(const std::string& path)
{
    png_image im;
    std::memset(&im, 0, sizeof im);
    im.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&im, path.c_str()))
        fail(Errc::Io, "cannot read " + path + ": " + im.message);
    im.format = PNG_FORMAT_RGB;
    ImageU8 out(static_cast<int>(im.height), static_cast<int>(im.width));
    if (!png_image_finish_read(&im, nullptr, out.data.data(), 0, nullptr)) {
        png_image_free(&im);
        fail(Errc::Io, "cannot decode " + path + ": " + im.message);
    }
    return out;
}

} // namespace wcopy
