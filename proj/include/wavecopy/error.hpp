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

#include <stdexcept>
#include <string>
#include <string_view>

namespace wcopy {

/// Every failure raised by the library carries one of these codes so callers
/// (and the CLI exit-code mapping) can tell them apart without string matching.
enum class Errc {
    ZeroDistance,
    DegenerateCamera,
    BacksideIncidence,
    UnsupportedCallback,
    ConfigUnresolved,
    NoRoute,
    Infeasible,
    UnknownTile,
    UnknownNode,
    LayoutMismatch,
    NonFiniteSample,
    BadMagic,
    BadChecksum,
    Truncated,
    DimMismatch,
    ConnectionLost,
    CorruptManifest,
    SizeMismatch,
    TooSmall,
    ZeroField,
    Empty,
    IndexMismatch,
    Io,
    Validation,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace wcopy
