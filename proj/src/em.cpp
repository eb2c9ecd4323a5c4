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

#include "wavecopy/em.hpp"

#include "wavecopy/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace wcopy {

namespace {

constexpr double kMinDistance = 1e-12;

template <class Fn> void parallel_for(size_t n, unsigned threads, Fn&& fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(1, n / 16)));
    if (threads <= 1) {
        fn(size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    const size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const size_t b = t * chunk, e = std::min(n, b + chunk);
        if (b >= e)
            break;
        pool.emplace_back([&, b, e] {
            try {
                fn(b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err)
                    err = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

inline Complex kernel(const Vec3& from, const Vec3& normal, double area, const Vec3& to, double k)
{
    const Vec3 d = to - from;
    const double r = norm(d);
    if (r <= kMinDistance)
        fail(Errc::ZeroDistance, "field point coincides with a radiating patch");
    const double c = dot(d, normal) / r;
    if (c <= 0.0)
        return {0.0, 0.0};
    return (k * area / (2.0 * kPi)) * c * std::polar(1.0 / r, -k * r);
}

// Occluder list with id -> index lookup so hops can skip their own surfaces cheaply.
class Occlusion {
public:
    explicit Occlusion(const RoomScene& scene) : rects_(occluders(scene))
    {
        for (size_t i = 0; i < rects_.size(); ++i)
            index_[rects_[i]->id] = static_cast<int>(i);
    }

    int index_of(const std::string& id) const
    {
        auto it = index_.find(id);
        return it == index_.end() ? -1 : it->second;
    }

    bool visible(const Vec3& p, const Vec3& q, int skip_a = -1, int skip_b = -1) const
    {
        const bool swap = std::tie(q.x, q.y, q.z) < std::tie(p.x, p.y, p.z);
        const Vec3& a = swap ? q : p;
        const Vec3& b = swap ? p : q;
        for (int i = 0; i < static_cast<int>(rects_.size()); ++i) {
            if (i == skip_a || i == skip_b)
                continue;
            if (segment_blocked(a, b, *rects_[static_cast<size_t>(i)]))
                return false;
        }
        return true;
    }

private:
    std::vector<const Rectangle*> rects_;
    std::unordered_map<std::string, int> index_;
};

// One reflecting side of a surface. Faces in the same group never illuminate each other.
struct Face {
    int group{0};
    int occluder{-1};
    std::string tile_id; // empty unless the face is a tile
    Vec3 normal;
    double area{0.0};
    std::vector<Vec3> pts;
    std::vector<Complex> gamma;
};

std::vector<Face> build_faces(const RoomScene& scene, const PropagationConfig& cfg, const Occlusion& occ)
{
    std::vector<Face> faces;
    int group = 0;
    auto add_surface = [&](const Rectangle& r, Complex gamma, bool two_sided) {
        const auto patches = discretize_rectangle(r, cfg.patch_side);
        for (int side = 0; side < (two_sided ? 2 : 1); ++side) {
            Face f;
            f.group = group;
            f.occluder = occ.index_of(r.id);
            f.normal = side == 0 ? r.normal : -r.normal;
            f.area = patches.front().area;
            for (const auto& p : patches)
                f.pts.push_back(p.position);
            f.gamma.assign(f.pts.size(), gamma);
            faces.push_back(std::move(f));
        }
    };
    for (const auto& w : scene.walls) {
        const Complex g = w.material.kind == MaterialKind::Pec ? Complex{-1.0, 0.0} : cfg.wall_reflectivity;
        if (std::abs(g) == 0.0)
            continue;
        add_surface(w, g, false);
        ++group;
    }
    for (const auto& o : scene.objects) {
        for (const auto& r : o.rects)
            add_surface(r, r.material.kind == MaterialKind::Absorber ? Complex{0.0, 0.0} : Complex{-1.0, 0.0}, true);
        ++group;
    }
    for (const auto& t : scene.tiles) {
        if (!t.deployment)
            fail(Errc::ConfigUnresolved, "tile '" + t.id + "' has no deployed configuration");
        Face f;
        f.group = group++;
        f.occluder = occ.index_of(t.id);
        f.tile_id = t.id;
        f.normal = t.placement.normal;
        f.area = t.pitch * t.pitch;
        f.pts = t.cell_positions();
        f.gamma = t.deployment->gamma;
        faces.push_back(std::move(f));
    }
    return faces;
}

struct Emitter {
    const Vec3* pts;
    size_t count;
    Vec3 normal;
    double area;
    const Complex* amp;
    int occluder;
    int group;
};

bool any_nonzero(const std::vector<Complex>& v)
{
    return std::any_of(v.begin(), v.end(), [](const Complex& c) { return c != Complex{}; });
}

// Sum of emitter radiation at q. `recv_normal` non-null applies the front-side test.
Complex gather(const std::vector<Emitter>& emitters, const Vec3& q, const Vec3* recv_normal, int recv_occ,
               int recv_group, const Occlusion& occ, double k)
{
    Complex acc{};
    for (const auto& em : emitters) {
        if (em.group == recv_group && recv_group >= 0)
            continue;
        for (size_t i = 0; i < em.count; ++i) {
            if (em.amp[i] == Complex{})
                continue;
            const Vec3& p = em.pts[i];
            if (recv_normal && dot(p - q, *recv_normal) <= 0.0)
                continue;
            const Complex w = kernel(p, em.normal, em.area, q, k);
            if (w == Complex{})
                continue;
            if (!occ.visible(p, q, em.occluder, recv_occ))
                continue;
            acc += em.amp[i] * w;
        }
    }
    return acc;
}

Complex direct(const std::vector<PointSource>& sources, const Vec3& q, const Vec3* recv_normal, int recv_occ,
               const Occlusion& occ, double k)
{
    Complex acc{};
    for (const auto& s : sources) {
        if (recv_normal && dot(s.position - q, *recv_normal) <= 0.0)
            continue;
        const double r = distance(s.position, q);
        const Complex g = s.amplitude * green(r, k);
        if (!occ.visible(s.position, q, recv_occ, -1))
            continue;
        acc += g;
    }
    return acc;
}

struct Propagation {
    std::vector<Complex> field;                           // at target points
    std::vector<std::vector<Complex>> incident_total;     // per face, summed over orders
};

Propagation propagate(const RoomScene& scene, const PropagationConfig& cfg, const std::vector<Vec3>& points,
                      const std::vector<InjectedSurface>& injected)
{
    if (!(cfg.k > 0.0) || cfg.max_bounce < 1 || !(cfg.patch_side > 0.0))
        fail(Errc::Validation, "propagation config needs k > 0, max_bounce >= 1 and a positive patch side");
    const Occlusion occ(scene);
    const std::vector<Face> faces = build_faces(scene, cfg, occ);

    // flattened receiver index over all face points
    std::vector<std::pair<int, int>> slots;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        for (int i = 0; i < static_cast<int>(faces[f].pts.size()); ++i)
            slots.emplace_back(f, i);

    Propagation out;
    out.field.assign(points.size(), Complex{});
    out.incident_total.resize(faces.size());
    std::vector<std::vector<Complex>> inc(faces.size()), dep(faces.size());
    for (size_t f = 0; f < faces.size(); ++f) {
        inc[f].assign(faces[f].pts.size(), Complex{});
        out.incident_total[f].assign(faces[f].pts.size(), Complex{});
    }

    parallel_for(points.size(), cfg.threads, [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i)
            out.field[i] = direct(scene.sources, points[i], nullptr, -1, occ, cfg.k);
    });
    if (!injected.empty()) {
        std::vector<Emitter> extra;
        for (const auto& s : injected)
            for (const auto& p : s.patches)
                extra.push_back(Emitter{&p.position, 1, p.normal, p.area, &p.amplitude, occ.index_of(s.exclude_id), -1});
        parallel_for(points.size(), cfg.threads, [&](size_t b, size_t e) {
            for (size_t i = b; i < e; ++i)
                out.field[i] += gather(extra, points[i], nullptr, -1, -1, occ, cfg.k);
        });
    }
    if (faces.empty())
        return out;

    parallel_for(slots.size(), cfg.threads, [&](size_t b, size_t e) {
        for (size_t s = b; s < e; ++s) {
            const auto [f, i] = slots[s];
            const Face& face = faces[static_cast<size_t>(f)];
            inc[f][i] = direct(scene.sources, face.pts[i], &face.normal, face.occluder, occ, cfg.k);
        }
    });

    for (int order = 1; order <= cfg.max_bounce; ++order) {
        std::vector<Emitter> emitters;
        for (size_t f = 0; f < faces.size(); ++f) {
            for (size_t i = 0; i < inc[f].size(); ++i)
                out.incident_total[f][i] += inc[f][i];
            dep[f].resize(inc[f].size());
            for (size_t i = 0; i < inc[f].size(); ++i)
                dep[f][i] = faces[f].gamma[i] * inc[f][i];
            if (any_nonzero(dep[f]))
                emitters.push_back(Emitter{faces[f].pts.data(), faces[f].pts.size(), faces[f].normal, faces[f].area,
                                           dep[f].data(), faces[f].occluder, faces[f].group});
        }
        if (emitters.empty())
            break;
        parallel_for(points.size(), cfg.threads, [&](size_t b, size_t e) {
            for (size_t i = b; i < e; ++i)
                out.field[i] += gather(emitters, points[i], nullptr, -1, -1, occ, cfg.k);
        });
        if (order == cfg.max_bounce)
            break;
        std::vector<std::vector<Complex>> next(faces.size());
        for (size_t f = 0; f < faces.size(); ++f)
            next[f].assign(faces[f].pts.size(), Complex{});
        parallel_for(slots.size(), cfg.threads, [&](size_t b, size_t e) {
            for (size_t s = b; s < e; ++s) {
                const auto [f, i] = slots[s];
                const Face& face = faces[static_cast<size_t>(f)];
                next[f][i] = gather(emitters, face.pts[i], &face.normal, face.occluder, face.group, occ, cfg.k);
            }
        });
        inc = std::move(next);
    }
    return out;
}

} // namespace

PropagationConfig default_propagation(double frequency)
{
    PropagationConfig c;
    c.k = wavenumber(frequency);
    c.patch_side = 0.05 * wavelength(frequency);
    return c;
}

Complex green(double r, double k)
{
    if (!(r > kMinDistance))
        fail(Errc::ZeroDistance, "green's function evaluated at zero distance");
    return std::polar(1.0 / (4.0 * kPi * r), -k * r);
}

std::vector<PatchSource> discretize_rectangle(const Rectangle& rect, double target_side)
{
    if (!(target_side > 0.0))
        fail(Errc::Validation, "patch side must be positive");
    const int nu = std::max(1, static_cast<int>(std::ceil(2.0 * rect.hu / target_side - 1e-9)));
    const int nv = std::max(1, static_cast<int>(std::ceil(2.0 * rect.hv / target_side - 1e-9)));
    const double du = 2.0 * rect.hu / nu, dv = 2.0 * rect.hv / nv;
    std::vector<PatchSource> out;
    out.reserve(static_cast<size_t>(nu) * nv);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j)
            out.push_back(PatchSource{rect.center + (-rect.hu + (i + 0.5) * du) * rect.u +
                                          (-rect.hv + (j + 0.5) * dv) * rect.v,
                                      rect.normal, du * dv, Complex{}});
    return out;
}

std::vector<Complex> radiate(const std::vector<PatchSource>& patches, const std::vector<Vec3>& points, double k)
{
    std::vector<Complex> out(points.size());
    for (size_t q = 0; q < points.size(); ++q) {
        Complex acc{};
        for (const auto& p : patches)
            acc += p.amplitude * kernel(p.position, p.normal, p.area, points[q], k);
        out[q] = acc;
    }
    return out;
}

std::vector<Complex> incident_field(const std::vector<PointSource>& sources, const std::vector<Vec3>& points,
                                    double k, const RoomScene& scene)
{
    const Occlusion occ(scene);
    std::vector<Complex> out(points.size());
    for (size_t i = 0; i < points.size(); ++i)
        out[i] = direct(sources, points[i], nullptr, -1, occ, k);
    return out;
}

std::vector<Complex> compute_field(const RoomScene& scene, const PropagationConfig& cfg,
                                   const std::vector<Vec3>& points)
{
    return propagate(scene, cfg, points, {}).field;
}

std::vector<Complex> compute_field_with(const RoomScene& scene, const PropagationConfig& cfg,
                                        const std::vector<Vec3>& points,
                                        const std::vector<InjectedSurface>& injected)
{
    return propagate(scene, cfg, points, injected).field;
}

RfReading array_reading(const RoomScene& scene, const PropagationConfig& cfg, const ReceiveArray& array)
{
    if (static_cast<size_t>(array.rows) * array.cols != array.elements.size())
        fail(Errc::Validation, "array '" + array.id + "' element count does not match rows x cols");
    RfReading r;
    r.rows = array.rows;
    r.cols = array.cols;
    r.data = compute_field(scene, cfg, array.elements);
    return r;
}

std::map<std::string, std::vector<Complex>> tile_incident_fields(const RoomScene& scene,
                                                                 const PropagationConfig& cfg)
{
    auto prop = propagate(scene, cfg, {}, {});
    std::map<std::string, std::vector<Complex>> out;
    // faces are built walls, objects, then tiles in scene order
    const size_t first_tile = prop.incident_total.size() - scene.tiles.size();
    for (size_t t = 0; t < scene.tiles.size(); ++t)
        out[scene.tiles[t].id] = prop.incident_total[first_tile + t];
    return out;
}

} // namespace wcopy
