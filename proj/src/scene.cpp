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

#include "wavecopy/scene.hpp"

#include "wavecopy/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace wcopy {

namespace {

constexpr double kTol = 1e-9;

// Liang-Barsky clip of the 2D segment a->b against [-hu,hu]x[-hv,hv].
bool segment_hits_box(double ax, double ay, double bx, double by, double hu, double hv)
{
    double t0 = 0.0, t1 = 1.0;
    const double dx = bx - ax, dy = by - ay;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {ax + hu, hu - ax, ay + hv, hv - ay};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0)
                return false;
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
        if (t0 > t1)
            return false;
    }
    return true;
}

} // namespace

Vec3 ReceiveArray::centroid() const
{
    Vec3 c;
    for (const auto& e : elements)
        c += e;
    return elements.empty() ? c : c / static_cast<double>(elements.size());
}

ReceiveArray make_planar_array(std::string id, const Vec3& center, const Vec3& col_axis, const Vec3& row_axis,
                               int rows, int cols, double spacing)
{
    ReceiveArray a;
    a.id = std::move(id);
    a.rows = rows;
    a.cols = cols;
    const Vec3 cu = normalized(col_axis), ru = normalized(row_axis);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            a.elements.push_back(center + ((c - 0.5 * (cols - 1)) * spacing) * cu +
                                 ((r - 0.5 * (rows - 1)) * spacing) * ru);
    return a;
}

std::vector<int> Codebook::phase_states() const
{
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(gamma.size()); ++i)
        if (i != absorb_state && std::abs(gamma[i]) > 0.0)
            out.push_back(i);
    return out;
}

Codebook Codebook::two_bit(std::string id)
{
    Codebook b;
    b.id = std::move(id);
    for (int i = 0; i < 4; ++i)
        b.gamma.push_back(std::polar(0.9, i * kPi / 2.0));
    b.gamma.emplace_back(0.0, 0.0);
    b.absorb_state = 4;
    return b;
}

std::vector<Vec3> SdmTile::cell_positions() const
{
    std::vector<Vec3> out;
    out.reserve(static_cast<size_t>(cell_count()));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out.push_back(placement.center + ((c - 0.5 * (cols - 1)) * pitch) * placement.u +
                          ((r - 0.5 * (rows - 1)) * pitch) * placement.v);
    return out;
}

SdmTile make_tile(std::string id, const Vec3& center, const Vec3& normal, const Vec3& up, int rows, int cols,
                  double pitch, std::string codebook)
{
    SdmTile t;
    t.id = id;
    t.rows = rows;
    t.cols = cols;
    t.pitch = pitch;
    t.codebook = std::move(codebook);
    t.placement = make_rectangle(id, center, normal, up, 0.5 * cols * pitch, 0.5 * rows * pitch,
                                 Material{MaterialKind::Sdm, id});
    return t;
}

const SdmTile* RoomScene::find_tile(const std::string& id) const
{
    for (const auto& t : tiles)
        if (t.id == id)
            return &t;
    return nullptr;
}

SdmTile* RoomScene::find_tile(const std::string& id)
{
    for (auto& t : tiles)
        if (t.id == id)
            return &t;
    return nullptr;
}

const ReceiveArray* RoomScene::find_array(const std::string& id) const
{
    for (const auto& a : arrays)
        if (a.id == id)
            return &a;
    return nullptr;
}

const ReflectorObject* RoomScene::find_object(const std::string& id) const
{
    for (const auto& o : objects)
        if (o.id == id)
            return &o;
    return nullptr;
}

const Camera* RoomScene::find_camera(const std::string& id) const
{
    for (const auto& c : cameras)
        if (c.id == id)
            return &c;
    return nullptr;
}

const Codebook& RoomScene::codebook_for(const SdmTile& tile) const
{
    auto it = codebooks.find(tile.codebook);
    if (it == codebooks.end())
        fail(Errc::Validation, "tile '" + tile.id + "' references unknown codebook '" + tile.codebook + "'");
    return it->second;
}

namespace {

// parameter interval of the line x0 + t d strictly inside `r` (shrunk by kTol)
std::pair<double, double> clip_line(const Vec3& x0, const Vec3& d, const Rectangle& r)
{
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    const Vec3 rel = x0 - r.center;
    for (const auto& [axis, half] : {std::pair{r.u, r.hu}, std::pair{r.v, r.hv}}) {
        const double a = dot(rel, axis), s = dot(d, axis), h = half - kTol;
        if (std::abs(s) < 1e-15) {
            if (std::abs(a) >= h)
                return {1.0, 0.0};
            continue;
        }
        double t0 = (-h - a) / s, t1 = (h - a) / s;
        if (t0 > t1)
            std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
    }
    return {lo, hi};
}

// true if the interiors of two non-parallel rectangles cross along a segment
bool interpenetrate(const Rectangle& a, const Rectangle& b)
{
    const Vec3 d_raw = cross(a.normal, b.normal);
    const double s = norm(d_raw);
    if (s < 1e-12)
        return false;
    const Vec3 d = d_raw / s;
    // point on both planes closest to a's center
    const double ha = dot(a.normal, a.center), hb = dot(b.normal, b.center);
    const double nn = dot(a.normal, b.normal);
    const double det = 1.0 - nn * nn;
    const Vec3 x0 = ((ha - hb * nn) / det) * a.normal + ((hb - ha * nn) / det) * b.normal;
    const auto [alo, ahi] = clip_line(x0, d, a);
    const auto [blo, bhi] = clip_line(x0, d, b);
    return std::min(ahi, bhi) - std::max(alo, blo) > kTol;
}

} // namespace

void validate_scene(const RoomScene& scene)
{
    std::set<std::string> ids;
    auto claim = [&](const std::string& id, const char* what) {
        if (id.empty())
            fail(Errc::Validation, std::string("empty id on ") + what);
        if (!ids.insert(id).second)
            fail(Errc::Validation, "duplicate id '" + id + "'");
    };
    for (const auto& w : scene.walls) {
        claim(w.id, "wall");
        validate_rectangle(w);
        if (w.material.kind == MaterialKind::Sdm)
            fail(Errc::Validation, "wall '" + w.id + "' uses the SDM material; declare it as a tile");
    }
    for (const auto& t : scene.tiles) {
        claim(t.id, "tile");
        validate_rectangle(t.placement);
        if (t.rows <= 0 || t.cols <= 0 || !(t.pitch > 0.0))
            fail(Errc::Validation, "tile '" + t.id + "' has an empty cell grid");
        if (t.cols * t.pitch > 2.0 * t.placement.hu + kTol || t.rows * t.pitch > 2.0 * t.placement.hv + kTol)
            fail(Errc::Validation, "tile '" + t.id + "' cells exceed its placement rectangle");
        const Codebook& book = scene.codebook_for(t);
        if (t.deployment) {
            if (static_cast<int>(t.deployment->gamma.size()) != t.cell_count())
                fail(Errc::Validation, "tile '" + t.id + "' deployment has the wrong cell count");
            for (int s : t.deployment->states)
                if (s < 0 || s >= static_cast<int>(book.gamma.size()))
                    fail(Errc::Validation, "tile '" + t.id + "' state index out of codebook range");
        }
    }
    for (const auto& [name, book] : scene.codebooks) {
        if (book.phase_states().size() < 2)
            fail(Errc::Validation, "codebook '" + name + "' needs at least two phase states");
        for (const auto& g : book.gamma)
            if (!(std::abs(g) <= 1.0 + 1e-12))
                fail(Errc::Validation, "codebook '" + name + "' is not passive");
    }
    for (const auto& o : scene.objects) {
        claim(o.id, "object");
        for (const auto& r : o.rects) {
            claim(r.id, "object rectangle");
            validate_rectangle(r);
        }
    }
    for (const auto& s : scene.sources) {
        claim(s.id, "source");
        if (!is_finite(s.position) || !(s.frequency > 0.0))
            fail(Errc::Validation, "source '" + s.id + "' is invalid");
    }
    for (const auto& a : scene.arrays) {
        claim(a.id, "array");
        if (a.rows <= 0 || a.cols <= 0 || static_cast<size_t>(a.rows) * a.cols != a.elements.size())
            fail(Errc::Validation, "array '" + a.id + "' element count does not match rows x cols");
    }
    for (const auto& c : scene.cameras) {
        claim(c.id, "camera");
        if (!(c.fov > 0.0 && c.fov < kPi) || c.width <= 0 || c.height <= 0)
            fail(Errc::Validation, "camera '" + c.id + "' has an invalid field of view or size");
    }
    for (const auto& e : scene.endpoints)
        claim(e.id, "endpoint");

    const auto rects = occluders(scene);
    for (size_t i = 0; i < rects.size(); ++i)
        for (size_t j = i + 1; j < rects.size(); ++j)
            if (interpenetrate(*rects[i], *rects[j]))
                fail(Errc::Validation, "rectangles '" + rects[i]->id + "' and '" + rects[j]->id + "' interpenetrate");

    if (scene.copy) {
        const auto& cp = *scene.copy;
        const bool src_ok = scene.find_object(cp.source) != nullptr ||
                            std::any_of(scene.endpoints.begin(), scene.endpoints.end(),
                                        [&](const Endpoint& e) { return e.id == cp.source; });
        if (!src_ok || !scene.find_array(cp.reference) || !scene.find_array(cp.destination))
            fail(Errc::Validation, "copy section references unknown ids");
    }
}

ReflectorObject rotate_object(const ReflectorObject& obj, const EulerAngles& angles)
{
    const Mat3 R = rotation_matrix(angles);
    ReflectorObject out = obj;
    out.rotation = angles;
    for (auto& r : out.rects) {
        r.center = obj.pivot + R * (r.center - obj.pivot);
        r.normal = R * r.normal;
        r.u = R * r.u;
        r.v = R * r.v;
    }
    return out;
}

bool segment_blocked(const Vec3& p, const Vec3& q, const Rectangle& rect)
{
    const double sp = dot(p - rect.center, rect.normal);
    const double sq = dot(q - rect.center, rect.normal);
    const bool pon = std::abs(sp) <= kTol, qon = std::abs(sq) <= kTol;
    if (pon && qon) {
        const double au = dot(p - rect.center, rect.u), av = dot(p - rect.center, rect.v);
        const double bu = dot(q - rect.center, rect.u), bv = dot(q - rect.center, rect.v);
        return segment_hits_box(au, av, bu, bv, rect.hu + kTol, rect.hv + kTol);
    }
    if (pon || qon)
        return false;
    if ((sp > 0.0) == (sq > 0.0))
        return false;
    const Vec3 x = p + (sp / (sp - sq)) * (q - p);
    const Vec3 d = x - rect.center;
    return std::abs(dot(d, rect.u)) <= rect.hu + kTol && std::abs(dot(d, rect.v)) <= rect.hv + kTol;
}

std::vector<const Rectangle*> occluders(const RoomScene& scene)
{
    std::vector<const Rectangle*> out;
    for (const auto& w : scene.walls)
        out.push_back(&w);
    for (const auto& t : scene.tiles)
        out.push_back(&t.placement);
    for (const auto& o : scene.objects)
        for (const auto& r : o.rects)
            out.push_back(&r);
    return out;
}

bool los_visible(const Vec3& p, const Vec3& q, const RoomScene& scene, const std::set<std::string>& exclude)
{
    // fixed endpoint order keeps the floating-point path identical for (p,q) and (q,p)
    const bool swap = std::tie(q.x, q.y, q.z) < std::tie(p.x, p.y, p.z);
    const Vec3& a = swap ? q : p;
    const Vec3& b = swap ? p : q;
    for (const Rectangle* r : occluders(scene)) {
        if (exclude.count(r->id))
            continue;
        if (segment_blocked(a, b, *r))
            return false;
    }
    return true;
}

std::array<std::uint8_t, 3> palette_color(int index)
{
    static constexpr std::array<std::array<std::uint8_t, 3>, kPaletteSize> palette{{
        {230, 25, 75},
        {60, 180, 75},
        {0, 130, 200},
        {255, 225, 25},
        {145, 30, 180},
        {245, 130, 48},
        {70, 240, 240},
        {128, 128, 128},
    }};
    const int i = ((index % kPaletteSize) + kPaletteSize) % kPaletteSize;
    return palette[static_cast<size_t>(i)];
}

ImageU8 rasterize_view(const RoomScene& scene, const Camera& cam)
{
    const Vec3 fwd_raw = cam.look_at - cam.position;
    if (norm(fwd_raw) <= 1e-12)
        fail(Errc::DegenerateCamera, "camera '" + cam.id + "' looks at its own position");
    const Vec3 fwd = normalized(fwd_raw);
    const Vec3 right_raw = cross(fwd, cam.up);
    if (norm(right_raw) <= 1e-12)
        fail(Errc::DegenerateCamera, "camera '" + cam.id + "' up vector is parallel to the view direction");
    const Vec3 right = normalized(right_raw);
    const Vec3 up = cross(right, fwd);

    std::vector<const Rectangle*> rects;
    for (const auto& o : scene.objects)
        for (const auto& r : o.rects)
            rects.push_back(&r);
    // painter's order: farthest center first, stable for equal distances
    std::stable_sort(rects.begin(), rects.end(), [&](const Rectangle* a, const Rectangle* b) {
        return distance(a->center, cam.position) > distance(b->center, cam.position);
    });

    ImageU8 img(cam.height, cam.width, 255);
    const double tx = std::tan(0.5 * cam.fov);
    const double ty = tx * cam.height / cam.width;
    for (const Rectangle* r : rects) {
        const auto color = palette_color(r->color);
        const double sn = dot(cam.position - r->center, r->normal);
        for (int row = 0; row < cam.height; ++row) {
            for (int col = 0; col < cam.width; ++col) {
                const double x = (2.0 * (col + 0.5) / cam.width - 1.0) * tx;
                const double y = (1.0 - 2.0 * (row + 0.5) / cam.height) * ty;
                const Vec3 dir = fwd + x * right + y * up;
                const double dn = dot(dir, r->normal);
                if (dn == 0.0)
                    continue;
                const double t = -sn / dn;
                if (!(t > 0.0))
                    continue;
                const Vec3 hit = cam.position + t * dir - r->center;
                if (std::abs(dot(hit, r->u)) <= r->hu && std::abs(dot(hit, r->v)) <= r->hv) {
                    auto* px = img.pixel(row, col);
                    px[0] = color[0];
                    px[1] = color[1];
                    px[2] = color[2];
                }
            }
        }
    }
    return img;
}

} // namespace wcopy
