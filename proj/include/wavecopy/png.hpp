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

#include "wavecopy/image.hpp"

#include <string>

namespace wcopy {

/// 8-bit RGB PNG. Throws Io on failure.
void write_png(const std::string& path, const ImageU8& img);
/// Any PNG, converted to 8-bit RGB. Throws Io on failure.
ImageU8 read_png(const std::string& path);

} // namespace wcopy
