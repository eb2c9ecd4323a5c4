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

#include <array>
#include <cmath>
#include <string>

namespace wcopy {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Point or direction in scene coordinates (meters).
struct Vec3 {
    double x{0.0}, y{0.0}, z{0.0};

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }
inline bool is_finite(const Vec3& a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

/// Row-major 3x3 matrix, used only for rigid rotations.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    Vec3 operator*(const Vec3& v) const
    {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const;
    Mat3 transposed() const;
};

/// Intrinsic yaw (z) -> pitch (y) -> roll (x) rotation, R = Rz(yaw) Ry(pitch) Rx(roll).
struct EulerAngles {
    double yaw{0.0}, pitch{0.0}, roll{0.0};
};

Mat3 rotation_matrix(const EulerAngles& angles);

/// Any unit vector orthogonal to `n`; deterministic for a given input.
Vec3 any_orthogonal(const Vec3& n);

enum class MaterialKind { Absorber, Pec, Sdm };

struct Material {
    MaterialKind kind{MaterialKind::Absorber};
    std::string tile_id; // only for MaterialKind::Sdm
};

/// Oriented planar rectangle: center + 2*hu along u, 2*hv along v, normal = u x v.
struct Rectangle {
    std::string id;
    Vec3 center;
    Vec3 normal{0, 0, 1};
    Vec3 u{1, 0, 0};
    Vec3 v{0, 1, 0};
    double hu{0.5};
    double hv{0.5};
    Material material;
    int color{0}; // palette index used by the rasterizer

    double area() const { return 4.0 * hu * hv; }
    std::array<Vec3, 4> corners() const;
};

/// Builds a rectangle whose in-plane axes are derived from `normal` and an `up` hint.
Rectangle make_rectangle(std::string id, const Vec3& center, const Vec3& normal, const Vec3& up,
                         double hu, double hv, Material material = {});

/// Throws Validation unless normal/u/v are orthonormal (1e-9) and half-extents positive.
void validate_rectangle(const Rectangle& r);

} // namespace wcopy
