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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qkdrates/channel.hpp"

namespace qkdrates {

// Relative threshold used by the orthogonality predicates.
inline constexpr double kOrthogonalityTol = 1e-9;
// Below this norm a column is treated as degenerate when building plans.
inline constexpr double kDegenerateTol = 1e-12;

// A key rate in bits per signal. raw may be negative; only positive rates
// certify a key, so clamped = max(raw, 0) is carried for presentation.
struct RateValue {
    double raw = 0;
    double clamped = 0;
};

RateValue make_rate(double raw);

enum class Restriction { full, zx_plane };

// Compensation rotations to apply before (oa, sender side) and after (ob,
// receiver side) the channel. zx_plane plans fix the y axis.
struct CompensationPlan {
    std::optional<Rotation3> oa;  // absent for one-side plans
    Rotation3 ob = Rotation3::Identity();
    Restriction restriction = Restriction::full;
    bool degenerate = false;  // fallback rows were chosen arbitrarily
};

// All twelve optimized rates. Naming: f* six-state, g* BB84 restricted to
// the z-x plane, j* BB84 with unrestricted directions; *1 one-side (receiver
// only) and *2 two-side compensation; *_conv are the conventional-estimation
// counterparts (matched bases only, worst case over unseen parameters).
struct RateReport {
    RateValue f1, f2, f1_conv, f2_conv;
    RateValue g1, g2, g1_conv, g2_conv;
    RateValue j1, j2, j1_conv, j2_conv;

    CompensationPlan plan_f1, plan_f2, plan_g1, plan_g2, plan_j1, plan_j2;

    bool six_state_orthogonal = false;
    bool bb84_plane_orthogonal = false;
    bool bb84_any_orthogonal = false;
    // Normalized inner products behind the booleans (six-state pairs
    // (zx, zy, xy); the bb84 predicates each test a single pair), reported
    // so callers can apply their own threshold.
    std::array<double, 3> six_state_inner = {0, 0, 0};
    double bb84_plane_inner = 0;
    double bb84_any_inner = 0;

    double s1_star = 0, s2_star = 0;

    std::vector<std::string> warnings;
};

// Uncompensated six-state rate with accurate estimation,
//   1 - H[q(e)] + h((1 + |col_z R|)/2) - h((1 + R_zz)/2);
// the receiver-side factor of the signed SVD is orthogonal, so |col_z R|
// equals the norm of the z column of diag(e) A.
RateValue six_state_accurate_rate(const QubitChannel& c);

// Optimal two-side six-state rate 1 - H[q] with the plan (A^-1, B^-1) that
// compensates the channel to a Pauli channel.
std::pair<RateValue, CompensationPlan> six_state_F2(const QubitChannel& c);

// Receiver-only plan whose first row aligns with the z column of R; achieves
// the same rate as six_state_F2.
std::pair<RateValue, CompensationPlan> six_state_F1_plan(const QubitChannel& c);

// Worst case over unseen parameters for a known diagonal gamma =
// (R_zz, R_xx, R_yy): 1 - H[q(gamma)]. Raises InfeasibleDiagonal when no
// completely positive channel has that diagonal.
RateValue six_state_conventional_core(const Vec3& gamma);

// True iff the columns of diag(e) A are pairwise orthogonal, i.e. the Gram
// matrix R^T R is diagonal within the relative threshold.
bool six_state_orthogonality(const QubitChannel& c);

// Uncompensated BB84 rate with accurate estimation (worst case over the
// parameters the protocol cannot see), with S the upper-left 2x2 of R:
//   1 - h((1+d_z)/2) - h((1+d_x)/2) + h((1+|(R_zz,R_xz)|)/2) - h((1+R_zz)/2).
RateValue bb84_accurate_rate(const QubitChannel& c);

// Optimal two-side plane compensation (U^-1, V^-1) diagonalizing S.
std::pair<RateValue, CompensationPlan> bb84_G2(const QubitChannel& c);

// Receiver-only plane plan aligned with (R_zz, R_xz); same rate as bb84_G2.
std::pair<RateValue, CompensationPlan> bb84_G1_plan(const QubitChannel& c);

// Worst case for conventional estimation at known mu = (R_zz, R_xx):
// 1 - h((1+R_zz)/2) - h((1+R_xx)/2).
RateValue bb84_conventional_core(double r_zz, double r_xx);

// True iff the columns of diag(d) U are orthogonal (Gram matrix S^T S).
bool bb84_orthogonality(const QubitChannel& c);

// Optimal two-side unrestricted compensation: diagonalize R and sort
// |e_z| >= |e_x| >= |e_y|; rate uses the two largest entries.
std::pair<RateValue, CompensationPlan> bb84_J2(const QubitChannel& c);

struct J1Result {
    RateValue rate;
    CompensationPlan plan;
    double s1_star = 0;
    double s2_star = 0;
};

// Receiver-only unrestricted plan: rows 1 and 2 of ob span the z and x
// columns of R (row 1 along the z column); the rate uses the singular
// values s1* >= s2* of the resulting upper-left block.
J1Result bb84_J1(const QubitChannel& c);

// True iff the z and x columns of diag(e) A are orthogonal.
bool bb84_any_orthogonality(const QubitChannel& c);

struct SearchConfig;  // optimize module

// Full report: closed forms plus the numerically maximized conventional
// one-side rates. The two-side conventional fields equal their accurate
// counterparts; when an orthogonality condition holds the one-side
// conventional value is set to the accurate one and the optimizer result is
// kept only as a consistency check.
RateReport full_report(const QubitChannel& c, const SearchConfig& opt);

}  // namespace qkdrates
