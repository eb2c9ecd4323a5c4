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

#include "wavecopy/error.hpp"

namespace wcopy {

std::string_view errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::ZeroDistance: return "ZeroDistance";
    case Errc::DegenerateCamera: return "DegenerateCamera";
    case Errc::BacksideIncidence: return "BacksideIncidence";
    case Errc::UnsupportedCallback: return "UnsupportedCallback";
    case Errc::ConfigUnresolved: return "ConfigUnresolved";
    case Errc::NoRoute: return "NoRoute";
    case Errc::Infeasible: return "Infeasible";
    case Errc::UnknownTile: return "UnknownTile";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::LayoutMismatch: return "LayoutMismatch";
    case Errc::NonFiniteSample: return "NonFiniteSample";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadChecksum: return "BadChecksum";
    case Errc::Truncated: return "Truncated";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::ConnectionLost: return "ConnectionLost";
    case Errc::CorruptManifest: return "CorruptManifest";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::TooSmall: return "TooSmall";
    case Errc::ZeroField: return "ZeroField";
    case Errc::Empty: return "Empty";
    case Errc::IndexMismatch: return "IndexMismatch";
    case Errc::Io: return "Io";
    case Errc::Validation: return "Validation";
    }
    return "Unknown";
}

} // namespace wcopy
