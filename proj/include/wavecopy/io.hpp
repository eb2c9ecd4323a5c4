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

#include "wavecopy/pwe.hpp"
#include "wavecopy/scene.hpp"
#include "wavecopy/sdm.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace wcopy {

using Json = nlohmann::json;

Json vec_to_json(const Vec3& v);
Vec3 vec_from_json(const Json& j);

Json codebook_to_json(const Codebook& book);
Codebook codebook_from_json(const std::string& id, const Json& j);

Json callback_to_json(const Callback& cb);
/// Throws UnsupportedCallback for unknown kinds or missing parameters.
Callback callback_from_json(const Json& j);

Json scene_to_json(const RoomScene& scene);
/// Parses and validates; malformed documents raise Validation.
RoomScene scene_from_json(const Json& j);

RoomScene load_scene(const std::string& path);
void save_scene(const RoomScene& scene, const std::string& path);

Json route_to_json(const WaveRoute& r);
Json graph_to_json(const PweGraph& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

} // namespace wcopy
