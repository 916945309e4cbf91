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

#include "qkdrates/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qkdrates {

bool is_rotation(const Mat2& m, double tol) {
    return (m * m.transpose() - Mat2::Identity()).cwiseAbs().maxCoeff() <= tol &&
           std::abs(m.determinant() - 1.0) <= tol;
}

bool is_rotation(const Mat3& m, double tol) {
    return (m * m.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
           std::abs(m.determinant() - 1.0) <= tol;
}

Rotation2 rotation2_from_angle(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Rotation2 q;
    q << c, -s,
         s, c;
    return q;
}

namespace {

Mat3 rot_about_z(double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    Mat3 m;
    // Coordinates ordered (z, x, y): z fixed, x-y plane rotates.
    m << 1, 0, 0,
         0, c, -s,
         0, s, c;
    return m;
}

Mat3 rot_about_x(double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    Mat3 m;
    m << c, 0, s,
         0, 1, 0,
         -s, 0, c;
    return m;
}

}  // namespace

Rotation3 rotation3_from_euler(double alpha, double beta, double gamma) {
    return rot_about_z(alpha) * rot_about_x(beta) * rot_about_z(gamma);
}

SignedSvd3 signed_svd3(const Mat3& m) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SignedSvd3 out;
    out.b = svd.matrixU();
    out.e = svd.singularValues();
    out.a = svd.matrixV().transpose();
    // Land both factors in the rotation group. Flipping column k of b (or
    // row k of a) together with the sign of e_k preserves the product; when
    // both factors are improper, flipping the pair leaves e untouched.
    const bool b_improper = out.b.determinant() < 0;
    const bool a_improper = out.a.determinant() < 0;
    if (b_improper) out.b.col(2) = -out.b.col(2);
    if (a_improper) out.a.row(2) = -out.a.row(2);
    if (b_improper != a_improper) out.e[2] = -out.e[2];
    return out;
}

SignedSvd2 signed_svd2(const Mat2& m) {
    Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SignedSvd2 out;
    out.v = svd.matrixU();
    out.d = svd.singularValues();
    out.u = svd.matrixV().transpose();
    const bool v_improper = out.v.determinant() < 0;
    const bool u_improper = out.u.determinant() < 0;
    if (v_improper) out.v.col(1) = -out.v.col(1);
    if (u_improper) out.u.row(1) = -out.u.row(1);
    if (v_improper != u_improper) out.d[1] = -out.d[1];
    return out;
}

SignedSvd3 SignedSvd3::sorted_desc() const {
    std::array<int, 3> idx = {0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [this](int i, int j) {
        return std::abs(e[i]) > std::abs(e[j]);
    });
    SignedSvd3 out;
    for (int i = 0; i < 3; ++i) {
        out.b.col(i) = b.col(idx[i]);
        out.e[i] = e[idx[i]];
        out.a.row(i) = a.row(idx[i]);
    }
    if (out.b.determinant() < 0) {
        // Odd permutation: both factors became improper at once.
        out.b.col(2) = -out.b.col(2);
        out.a.row(2) = -out.a.row(2);
    }
    return out;
}

}  // namespace qkdrates
