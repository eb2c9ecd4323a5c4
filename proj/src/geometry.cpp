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

#include "wavecopy/geometry.hpp"

#include "wavecopy/error.hpp"

#include <utility>

namespace wcopy {

Mat3 Mat3::operator*(const Mat3& o) const
{
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i * 3 + j] = m[i * 3] * o.m[j] + m[i * 3 + 1] * o.m[3 + j] + m[i * 3 + 2] * o.m[6 + j];
    return r;
}

Mat3 Mat3::transposed() const
{
    return Mat3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
}

Mat3 rotation_matrix(const EulerAngles& a)
{
    const double cz = std::cos(a.yaw), sz = std::sin(a.yaw);
    const double cy = std::cos(a.pitch), sy = std::sin(a.pitch);
    const double cx = std::cos(a.roll), sx = std::sin(a.roll);
    const Mat3 rz{{cz, -sz, 0, sz, cz, 0, 0, 0, 1}};
    const Mat3 ry{{cy, 0, sy, 0, 1, 0, -sy, 0, cy}};
    const Mat3 rx{{1, 0, 0, 0, cx, -sx, 0, sx, cx}};
    return rz * ry * rx;
}

Vec3 any_orthogonal(const Vec3& n)
{
    // cross with the coordinate axis least aligned with n
    const Vec3 axis = (std::abs(n.x) <= std::abs(n.y) && std::abs(n.x) <= std::abs(n.z)) ? Vec3{1, 0, 0}
                      : (std::abs(n.y) <= std::abs(n.z))                                 ? Vec3{0, 1, 0}
                                                                                         : Vec3{0, 0, 1};
    return normalized(cross(n, axis));
}

std::array<Vec3, 4> Rectangle::corners() const
{
    return {center - hu * u - hv * v, center + hu * u - hv * v, center + hu * u + hv * v,
            center - hu * u + hv * v};
}

Rectangle make_rectangle(std::string id, const Vec3& center, const Vec3& normal, const Vec3& up,
                         double hu, double hv, Material material)
{
    Rectangle r;
    r.id = std::move(id);
    r.center = center;
    r.normal = normalized(normal);
    Vec3 v = up - dot(up, r.normal) * r.normal;
    if (norm(v) < 1e-12)
        v = any_orthogonal(r.normal);
    r.v = normalized(v);
    r.u = cross(r.v, r.normal);
    r.hu = hu;
    r.hv = hv;
    r.material = std::move(material);
    return r;
}

void validate_rectangle(const Rectangle& r)
{
    constexpr double tol = 1e-9;
    const bool ok = is_finite(r.center) && std::abs(norm(r.normal) - 1.0) <= tol &&
                    std::abs(norm(r.u) - 1.0) <= tol && std::abs(norm(r.v) - 1.0) <= tol &&
                    std::abs(dot(r.u, r.v)) <= tol && std::abs(dot(r.u, r.normal)) <= tol &&
                    std::abs(dot(r.v, r.normal)) <= tol && norm(cross(r.u, r.v) - r.normal) <= tol &&
                    r.hu > 0.0 && r.hv > 0.0;
    if (!ok)
        fail(Errc::Validation, "rectangle '" + r.id + "' is not an orthonormal frame with positive extents");
}

} // namespace wcopy
