// Copyright 2026 The qkdrates developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

namespace qkdrates {

// Axis order used everywhere in this library: index 0 = z, 1 = x, 2 = y.
enum Axis : int { kAxisZ = 0, kAxisX = 1, kAxisY = 2 };

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// Proper rotations (orthogonal, det +1 within kRotationTol). Producers in
// this library guarantee the invariant; consumers may check with
// is_rotation where inputs come from outside.
using Rotation2 = Mat2;
using Rotation3 = Mat3;

inline constexpr double kRotationTol = 1e-12;

bool is_rotation(const Mat2& m, double tol = kRotationTol);
bool is_rotation(const Mat3& m, double tol = kRotationTol);

// Rotation of the (z, x) plane by theta, det +1.
Rotation2 rotation2_from_angle(double theta);

// Z-X-Z convention in the (z, x, y) axis order:
//   R(alpha, beta, gamma) = Rz(alpha) * Rx(beta) * Rz(gamma).
// Surjective onto SO(3) for alpha, gamma in [0, 2pi), beta in [0, pi].
Rotation3 rotation3_from_euler(double alpha, double beta, double gamma);

// Factorization M = b * diag(e) * a with both factors proper rotations.
// |e| are the singular values of M; any determinant-sign deficit of the
// plain SVD is folded into the signs of e, never into a or b. Factors are
// not unique (sign pairs and equal-magnitude permutations); compare
// reconstructions and |e| multisets, not entries.
struct SignedSvd3 {
    Rotation3 b = Rotation3::Identity();
    Vec3 e = Vec3::Zero();  // order (e_z, e_x, e_y) as produced by the SVD
    Rotation3 a = Rotation3::Identity();

    Mat3 reconstruct() const { return b * e.asDiagonal() * a; }

    // Reorders entries so |e_z| >= |e_x| >= |e_y|. Odd permutations flip
    // the determinant of both factors; a paired column/row sign flip
    // restores them without touching e.
    SignedSvd3 sorted_desc() const;
};

// Two-dimensional analogue: M = v * diag(d) * u.
struct SignedSvd2 {
    Rotation2 v = Rotation2::Identity();
    Vec2 d = Vec2::Zero();  // order (d_z, d_x)
    Rotation2 u = Rotation2::Identity();

    Mat2 reconstruct() const { return v * d.asDiagonal() * u; }
};

SignedSvd3 signed_svd3(const Mat3& m);
SignedSvd2 signed_svd2(const Mat2& m);

}  // namespace qkdrates
