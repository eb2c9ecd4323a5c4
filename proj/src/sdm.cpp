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

#include "wavecopy/sdm.hpp"

#include "wavecopy/error.hpp"

#include <cmath>

namespace wcopy {

namespace {

double wrap(double phi)
{
    double r = std::fmod(phi, 2.0 * kPi);
    if (r < 0.0)
        r += 2.0 * kPi;
    if (r >= 2.0 * kPi)
        r = 0.0;
    return r;
}

double circular_distance(double a, double b)
{
    const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

Vec3 unit_or_fail(const Vec3& v, const char* what)
{
    const double n = norm(v);
    if (!is_finite(v) || !(n > 1e-12))
        fail(Errc::UnsupportedCallback, std::string("callback parameter '") + what + "' is not a direction");
    return v / n;
}

void check_front(const SdmTile& tile, const Vec3& incident, const Vec3& target)
{
    const Vec3& n = tile.placement.normal;
    if (!(dot(incident, n) < 0.0))
        fail(Errc::BacksideIncidence, "incident direction does not hit the front of tile '" + tile.id + "'");
    if (!(dot(target, n) > 0.0))
        fail(Errc::BacksideIncidence, "target direction leaves through the back of tile '" + tile.id + "'");
}

} // namespace

Callback Callback::steer(const Vec3& incident, const Vec3& target)
{
    Callback c;
    c.kind = CallbackKind::Steer;
    c.incident = incident;
    c.target = target;
    return c;
}

Callback Callback::split(const Vec3& incident, const Vec3& target1, const Vec3& target2)
{
    Callback c;
    c.kind = CallbackKind::Split;
    c.incident = incident;
    c.target = target1;
    c.target2 = target2;
    return c;
}

Callback Callback::absorb()
{
    return Callback{};
}

Callback Callback::focus(const Vec3& source_point, const Vec3& focal_point)
{
    Callback c;
    c.kind = CallbackKind::Focus;
    c.source_point = source_point;
    c.focal_point = focal_point;
    return c;
}

Callback Callback::phase_alter(double offset, std::optional<Callback> base)
{
    Callback c;
    c.kind = CallbackKind::PhaseAlter;
    c.phase_offset = offset;
    if (base)
        c.base = std::make_shared<const Callback>(std::move(*base));
    return c;
}

bool operator==(const Callback& a, const Callback& b)
{
    if (a.kind != b.kind || !(a.incident == b.incident) || !(a.target == b.target) || !(a.target2 == b.target2) ||
        !(a.source_point == b.source_point) || !(a.focal_point == b.focal_point) || a.phase_offset != b.phase_offset)
        return false;
    if (!a.base || !b.base)
        return !a.base && !b.base;
    return *a.base == *b.base;
}

const char* callback_name(CallbackKind kind)
{
    switch (kind) {
    case CallbackKind::Steer: return "STEER";
    case CallbackKind::Split: return "SPLIT";
    case CallbackKind::Absorb: return "ABSORB";
    case CallbackKind::PhaseAlter: return "PHASE_ALTER";
    case CallbackKind::Focus: return "FOCUS";
    }
    return "?";
}

std::vector<double> steer_profile(const SdmTile& tile, const Vec3& incident, const Vec3& target, double k)
{
    const Vec3 di = unit_or_fail(incident, "incident"), dout = unit_or_fail(target, "target");
    check_front(tile, di, dout);
    const Vec3 g = k * (di - dout);
    std::vector<double> out;
    for (const auto& c : tile.cell_positions())
        out.push_back(wrap(dot(g, c - tile.placement.center)));
    return out;
}

std::vector<double> focus_profile(const SdmTile& tile, const Vec3& source_point, const Vec3& focal_point, double k)
{
    const Rectangle& pl = tile.placement;
    if (!(dot(source_point - pl.center, pl.normal) > 1e-9) || !(dot(focal_point - pl.center, pl.normal) > 1e-9))
        fail(Errc::BacksideIncidence, "focus points must both lie in front of tile '" + tile.id + "'");
    std::vector<double> out;
    for (const auto& c : tile.cell_positions())
        out.push_back(wrap(k * (distance(source_point, c) + distance(c, focal_point))));
    return out;
}

std::vector<double> split_profile(const SdmTile& tile, const Vec3& incident, const Vec3& target1,
                                  const Vec3& target2, double k)
{
    const auto p1 = steer_profile(tile, incident, target1, k);
    const auto p2 = steer_profile(tile, incident, target2, k);
    std::vector<double> out(p1.size());
    for (size_t i = 0; i < p1.size(); ++i)
        out[i] = wrap(std::arg(std::polar(1.0, p1[i]) + std::polar(1.0, p2[i])));
    return out;
}

std::vector<int> quantize_profile(const std::vector<double>& profile, const Codebook& book)
{
    const auto states = book.phase_states();
    if (states.size() < 2)
        fail(Errc::Validation, "codebook '" + book.id + "' needs at least two phase states");
    std::vector<int> out(profile.size());
    for (size_t i = 0; i < profile.size(); ++i) {
        int best = states.front();
        double best_d = circular_distance(profile[i], std::arg(book.gamma[static_cast<size_t>(best)]));
        for (size_t s = 1; s < states.size(); ++s) {
            const double d = circular_distance(profile[i], std::arg(book.gamma[static_cast<size_t>(states[s])]));
            if (d < best_d - 1e-12) {
                best = states[s];
                best_d = d;
            }
        }
        out[i] = best;
    }
    return out;
}

std::optional<std::vector<double>> callback_profile(const Callback& cb, const SdmTile& tile, double k)
{
    switch (cb.kind) {
    case CallbackKind::Absorb:
        return std::nullopt;
    case CallbackKind::Steer:
        return steer_profile(tile, cb.incident, cb.target, k);
    case CallbackKind::Split:
        return split_profile(tile, cb.incident, cb.target, cb.target2, k);
    case CallbackKind::Focus:
        return focus_profile(tile, cb.source_point, cb.focal_point, k);
    case CallbackKind::PhaseAlter: {
        if (!std::isfinite(cb.phase_offset))
            fail(Errc::UnsupportedCallback, "PHASE_ALTER offset is not finite");
        std::vector<double> base(static_cast<size_t>(tile.cell_count()), 0.0);
        if (cb.base) {
            auto p = callback_profile(*cb.base, tile, k);
            if (!p)
                fail(Errc::UnsupportedCallback, "PHASE_ALTER cannot offset an ABSORB configuration");
            base = std::move(*p);
        }
        for (auto& v : base)
            v = wrap(v + cb.phase_offset);
        return base;
    }
    }
    fail(Errc::UnsupportedCallback, "unknown callback kind");
}

std::vector<int> codebook_lookup(const Callback& cb, const SdmTile& tile, const Codebook& book, double k)
{
    auto profile = callback_profile(cb, tile, k);
    if (!profile) {
        if (book.absorb_state < 0)
            fail(Errc::UnsupportedCallback, "codebook '" + book.id + "' has no ABSORB state");
        return std::vector<int>(static_cast<size_t>(tile.cell_count()), book.absorb_state);
    }
    return quantize_profile(*profile, book);
}

TileDeployment deployment_from_states(const std::vector<int>& states, const Codebook& book)
{
    TileDeployment d;
    d.states = states;
    d.gamma.reserve(states.size());
    for (int s : states) {
        if (s < 0 || s >= static_cast<int>(book.gamma.size()))
            fail(Errc::Validation, "state index outside codebook '" + book.id + "'");
        d.gamma.push_back(book.gamma[static_cast<size_t>(s)]);
    }
    return d;
}

TileDeployment continuous_deployment(const std::vector<double>& profile, double magnitude)
{
    TileDeployment d;
    d.gamma.reserve(profile.size());
    for (double p : profile)
        d.gamma.push_back(std::polar(magnitude, p));
    return d;
}

std::vector<PatchSource> reflect(const SdmTile& tile, const std::vector<Complex>& incident)
{
    if (!tile.deployment)
        fail(Errc::ConfigUnresolved, "tile '" + tile.id + "' has no deployed configuration");
    if (incident.size() != static_cast<size_t>(tile.cell_count()) ||
        tile.deployment->gamma.size() != incident.size())
        fail(Errc::DimMismatch, "incident field does not match the cell grid of tile '" + tile.id + "'");
    const auto pos = tile.cell_positions();
    std::vector<PatchSource> out(pos.size());
    for (size_t i = 0; i < pos.size(); ++i)
        out[i] = PatchSource{pos[i], tile.placement.normal, tile.pitch * tile.pitch,
                             tile.deployment->gamma[i] * incident[i]};
    return out;
}

namespace {

std::vector<int> shift_states(const std::vector<int>& states, std::uint64_t key, const Codebook& book, int sign)
{
    const auto phase = book.phase_states();
    const int n = static_cast<int>(phase.size());
    if (n < 2)
        fail(Errc::Validation, "codebook '" + book.id + "' has no cyclic phase group");
    std::vector<int> pos(book.gamma.size(), -1);
    for (int i = 0; i < n; ++i)
        pos[static_cast<size_t>(phase[static_cast<size_t>(i)])] = i;
    SplitMix64 rng(key);
    std::vector<int> out(states.size());
    for (size_t i = 0; i < states.size(); ++i) {
        const int r = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
        const int s = states[i];
        const int p = (s >= 0 && s < static_cast<int>(pos.size())) ? pos[static_cast<size_t>(s)] : -1;
        out[i] = p < 0 ? s : phase[static_cast<size_t>(((p + sign * r) % n + n) % n)];
    }
    return out;
}

} // namespace

std::vector<int> scramble_config(const std::vector<int>& states, std::uint64_t key, const Codebook& book)
{
    return shift_states(states, key, book, +1);
}

std::vector<int> descramble_config(const std::vector<int>& states, std::uint64_t key, const Codebook& book)
{
    return shift_states(states, key, book, -1);
}

} // namespace wcopy
