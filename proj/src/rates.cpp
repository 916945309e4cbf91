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

#include "qkdrates/rates.hpp"

#include <cmath>
#include <string>

#include "qkdrates/entropy.hpp"
#include "qkdrates/errors.hpp"
#include "qkdrates/optimize.hpp"

namespace qkdrates {

namespace {

double h_of(double x) {
    // h((1+x)/2); even in x, so the signed SVD's sign freedom cancels out.
    return binary_entropy((1.0 + x) / 2.0);
}

PauliDistribution checked_weights(const QubitChannel& c, const SignedSvd3& svd) {
    if (c.t.norm() > kUnitalTol) {
        throw NotUnital("channel is not unital: |t| = " + std::to_string(c.t.norm()));
    }
    const PauliDistribution q = pauli_distribution(svd.e);
    if (q.min() < -kCpWeightTol) {
        throw NotCompletelyPositive(
            "channel is not completely positive: min Bell weight = " + std::to_string(q.min()),
            q.min());
    }
    return q;
}

// The BB84 worst-case formulas are functions of singular values alone and
// stay meaningful on any unital contraction, which is what the classic
// diag(0.5, 0.7, 0.9) example exercising J1 < J2 requires; only inputs whose
// entropies would be undefined are rejected.
void check_unital_contraction(const QubitChannel& c, const SignedSvd3& svd) {
    if (c.t.norm() > kUnitalTol) {
        throw NotUnital("channel is not unital: |t| = " + std::to_string(c.t.norm()));
    }
    const double top = svd.e.cwiseAbs().maxCoeff();
    if (top > 1.0 + 1e-12) {
        throw NotCompletelyPositive(
            "map is not a contraction: largest singular value = " + std::to_string(top),
            1.0 - top);
    }
}

// Completes an orthonormal first row to a proper rotation, projecting a
// fixed fallback basis; deterministic for reproducible plans.
Rotation3 rotation_with_first_row(const Vec3& row1) {
    Vec3 pick = Vec3::UnitX();  // axis x in (z, x, y) indexing = position 1
    for (int i = 0; i < 3; ++i) {
        Vec3 cand = Vec3::Zero();
        cand[i] = 1;
        if (std::abs(row1.dot(cand)) < 0.9) {
            pick = cand;
            break;
        }
    }
    const Vec3 row2 = (pick - row1.dot(pick) * row1).normalized();
    const Vec3 row3 = row1.cross(row2);
    Rotation3 out;
    out.row(0) = row1;
    out.row(1) = row2;
    out.row(2) = row3;
    return out;
}

double relative_inner(const Vec3& u, const Vec3& v) {
    const double denom = u.norm() * v.norm();
    if (denom == 0.0) return 0.0;  // an exactly zero column is orthogonal to anything
    return std::abs(u.dot(v)) / denom;
}

}  // namespace

RateValue make_rate(double raw) {
    return RateValue{raw, std::max(raw, 0.0)};
}

RateValue six_state_accurate_rate(const QubitChannel& c) {
    const SignedSvd3 svd = signed_svd3(c.r);
    const PauliDistribution q = checked_weights(c, svd);
    const double col_norm = c.r.col(kAxisZ).norm();
    const double raw = 1.0 - shannon_entropy(q.as_array()) + h_of(col_norm) -
                       h_of(c.r(kAxisZ, kAxisZ));
    return make_rate(raw);
}

std::pair<RateValue, CompensationPlan> six_state_F2(const QubitChannel& c) {
    const SignedSvd3 svd = signed_svd3(c.r);
    const PauliDistribution q = checked_weights(c, svd);
    CompensationPlan plan;
    plan.oa = svd.a.transpose();
    plan.ob = svd.b.transpose();
    return {make_rate(1.0 - shannon_entropy(q.as_array())), plan};
}

std::pair<RateValue, CompensationPlan> six_state_F1_plan(const QubitChannel& c) {
    const SignedSvd3 svd = signed_svd3(c.r);
    const PauliDistribution q = checked_weights(c, svd);
    CompensationPlan plan;
    const Vec3 col_z = c.r.col(kAxisZ);
    if (col_z.norm() < kDegenerateTol) {
        // The compensated R'_zz vanishes for every receiver rotation, and
        // so do both correction terms; any rotation is optimal.
        plan.degenerate = true;
    } else {
        plan.ob = rotation_with_first_row(col_z.normalized());
    }
    return {make_rate(1.0 - shannon_entropy(q.as_array())), plan};
}

RateValue six_state_conventional_core(const Vec3& gamma) {
    for (int i = 0; i < 3; ++i) {
        if (std::abs(gamma[i]) > 1.0 + 1e-12) {
            throw OutOfRange("six_state_conventional_core: diagonal entry " +
                             std::to_string(gamma[i]) + " outside [-1, 1]");
        }
    }
    const PauliDistribution q = pauli_distribution(gamma);
    if (q.min() < -kCpWeightTol) {
        throw InfeasibleDiagonal(
            "no completely positive channel has diagonal with Bell weight " +
            std::to_string(q.min()));
    }
    return make_rate(1.0 - shannon_entropy(q.as_array()));
}

bool six_state_orthogonality(const QubitChannel& c) {
    check_unital_contraction(c, signed_svd3(c.r));
    // Gram matrix of the columns of diag(e) A equals R^T R because the
    // receiver-side factor is orthogonal.
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
        for (int j = i + 1; j < 3 && ok; ++j) {
            ok = relative_inner(c.r.col(i), c.r.col(j)) <= kOrthogonalityTol;
        }
    }
    return ok;
}

RateValue bb84_accurate_rate(const QubitChannel& c) {
    const SignedSvd3 svd = signed_svd3(c.r);
    check_unital_contraction(c, svd);
    const Mat2 s = c.r.topLeftCorner<2, 2>();
    const Vec2 d = signed_svd2(s).d;
    const double plane_norm = std::hypot(c.r(kAxisZ, kAxisZ), c.r(kAxisX, kAxisZ));
    const double raw = 1.0 - h_of(d[0]) - h_of(d[1]) + h_of(plane_norm) -
                       h_of(c.r(kAxisZ, kAxisZ));
    return make_rate(raw);
}

namespace {

Rotation3 embed_zx(const Mat2& q) {
    Rotation3 out = Rotation3::Identity();
    out.topLeftCorner<2, 2>() = q;
    return out;
}

}  // namespace

std::pair<RateValue, CompensationPlan> bb84_G2(const QubitChannel& c) {
    const SignedSvd3 svd3 = signed_svd3(c.r);
    check_unital_contraction(c, svd3);
    const SignedSvd2 svd = signed_svd2(c.r.topLeftCorner<2, 2>());
    CompensationPlan plan;
    plan.restriction = Restriction::zx_plane;
    plan.oa = embed_zx(svd.u.transpose());
    plan.ob = embed_zx(svd.v.transpose());
    return {make_rate(1.0 - h_of(svd.d[0]) - h_of(svd.d[1])), plan};
}

std::pair<RateValue, CompensationPlan> bb84_G1_plan(const QubitChannel& c) {
    const SignedSvd3 svd3 = signed_svd3(c.r);
    check_unital_contraction(c, svd3);
    const SignedSvd2 svd = signed_svd2(c.r.topLeftCorner<2, 2>());
    CompensationPlan plan;
    plan.restriction = Restriction::zx_plane;
    const double rzz = c.r(kAxisZ, kAxisZ);
    const double rxz = c.r(kAxisX, kAxisZ);
    const double norm = std::hypot(rzz, rxz);
    if (norm < kDegenerateTol) {
        plan.degenerate = true;
    } else {
        Mat2 qb;
        qb << rzz / norm, rxz / norm,
              -rxz / norm, rzz / norm;
        plan.ob = embed_zx(qb);
    }
    return {make_rate(1.0 - h_of(svd.d[0]) - h_of(svd.d[1])), plan};
}

RateValue bb84_conventional_core(double r_zz, double r_xx) {
    if (std::abs(r_zz) > 1.0 + 1e-12 || std::abs(r_xx) > 1.0 + 1e-12) {
        throw OutOfRange("bb84_conventional_core: entry outside [-1, 1]");
    }
    return make_rate(1.0 - h_of(r_zz) - h_of(r_xx));
}

bool bb84_orthogonality(const QubitChannel& c) {
    check_unital_contraction(c, signed_svd3(c.r));
    const Mat2 s = c.r.topLeftCorner<2, 2>();
    const double denom = s.col(0).norm() * s.col(1).norm();
    if (denom == 0.0) return true;
    return std::abs(s.col(0).dot(s.col(1))) / denom <= kOrthogonalityTol;
}

std::pair<RateValue, CompensationPlan> bb84_J2(const QubitChannel& c) {
    SignedSvd3 svd = signed_svd3(c.r);
    check_unital_contraction(c, svd);
    svd = svd.sorted_desc();
    // Make the two entries entering the rate nonnegative. Signs flip in
    // pairs (a column pair of b changes sign with them) so b stays proper.
    auto flip_pair = [&svd](int i, int j) {
        svd.e[i] = -svd.e[i];
        svd.e[j] = -svd.e[j];
        svd.b.col(i) = -svd.b.col(i);
        svd.b.col(j) = -svd.b.col(j);
    };
    if (svd.e[0] < 0 && svd.e[1] < 0) {
        flip_pair(0, 1);
    } else if (svd.e[0] < 0) {
        flip_pair(0, 2);
    } else if (svd.e[1] < 0) {
        flip_pair(1, 2);
    }
    CompensationPlan plan;
    plan.oa = svd.a.transpose();
    plan.ob = svd.b.transpose();
    return {make_rate(1.0 - h_of(svd.e[0]) - h_of(svd.e[1])), plan};
}

J1Result bb84_J1(const QubitChannel& c) {
    const SignedSvd3 svd = signed_svd3(c.r);
    check_unital_contraction(c, svd);
    const Vec3 col_z = c.r.col(kAxisZ);
    const Vec3 col_x = c.r.col(kAxisX);

    J1Result out;
    if (col_z.norm() >= kDegenerateTol) {
        const Vec3 row1 = col_z.normalized();
        const Vec3 resid = col_x - col_x.dot(row1) * row1;
        if (resid.norm() >= kDegenerateTol) {
            Rotation3 ob;
            ob.row(0) = row1;
            ob.row(1) = resid.normalized();
            ob.row(2) = row1.cross(resid.normalized());
            out.plan.ob = ob;
        } else {
            out.plan.ob = rotation_with_first_row(row1);
            out.plan.degenerate = true;
        }
    } else if (col_x.norm() >= kDegenerateTol) {
        // The z column vanishes; the only useful direction left is the x
        // column, so the receiver aligns with it.
        out.plan.ob = rotation_with_first_row(col_x.normalized());
        out.plan.degenerate = true;
    } else {
        out.plan.degenerate = true;
    }

    const Mat2 block = (out.plan.ob * c.r).topLeftCorner<2, 2>();
    const Vec2 d = signed_svd2(block).d;
    out.s1_star = std::max(std::abs(d[0]), std::abs(d[1]));
    out.s2_star = std::min(std::abs(d[0]), std::abs(d[1]));
    out.rate = make_rate(1.0 - h_of(out.s1_star) - h_of(out.s2_star));
    return out;
}

bool bb84_any_orthogonality(const QubitChannel& c) {
    check_unital_contraction(c, signed_svd3(c.r));
    return relative_inner(c.r.col(kAxisZ), c.r.col(kAxisX)) <= kOrthogonalityTol;
}

RateReport full_report(const QubitChannel& c, const SearchConfig& opt) {
    RateReport rep;

    auto [f2, plan_f2] = six_state_F2(c);
    auto [f1, plan_f1] = six_state_F1_plan(c);
    auto [g2, plan_g2] = bb84_G2(c);
    auto [g1, plan_g1] = bb84_G1_plan(c);
    auto [j2, plan_j2] = bb84_J2(c);
    J1Result j1 = bb84_J1(c);

    rep.f2 = f2;
    rep.f1 = f1;
    rep.g2 = g2;
    rep.g1 = g1;
    rep.j2 = j2;
    rep.j1 = j1.rate;
    rep.plan_f2 = plan_f2;
    rep.plan_f1 = plan_f1;
    rep.plan_g2 = plan_g2;
    rep.plan_g1 = plan_g1;
    rep.plan_j2 = plan_j2;
    rep.plan_j1 = j1.plan;
    rep.s1_star = j1.s1_star;
    rep.s2_star = j1.s2_star;

    // Two-side conventional rates coincide with the accurate ones.
    rep.f2_conv = f2;
    rep.g2_conv = g2;
    rep.j2_conv = j2;

    rep.six_state_inner = {relative_inner(c.r.col(kAxisZ), c.r.col(kAxisX)),
                           relative_inner(c.r.col(kAxisZ), c.r.col(kAxisY)),
                           relative_inner(c.r.col(kAxisX), c.r.col(kAxisY))};
    rep.six_state_orthogonal = rep.six_state_inner[0] <= kOrthogonalityTol &&
                               rep.six_state_inner[1] <= kOrthogonalityTol &&
                               rep.six_state_inner[2] <= kOrthogonalityTol;
    {
        const Mat2 s = c.r.topLeftCorner<2, 2>();
        const double denom = s.col(0).norm() * s.col(1).norm();
        rep.bb84_plane_inner = denom == 0.0 ? 0.0 : std::abs(s.col(0).dot(s.col(1))) / denom;
        rep.bb84_plane_orthogonal = rep.bb84_plane_inner <= kOrthogonalityTol;
    }
    rep.bb84_any_inner = rep.six_state_inner[0];
    rep.bb84_any_orthogonal = rep.bb84_any_inner <= kOrthogonalityTol;

    const auto [tf1, tf1_rot] = tilde_F1(c, opt);
    const auto [tg1, tg1_rot] = tilde_G1(c, opt);
    const auto [tj1, tj1_rot] = tilde_J1(c, opt);
    rep.f1_conv = tf1;
    rep.g1_conv = tg1;
    rep.j1_conv = tj1;

    auto reconcile = [&rep](bool orthogonal, RateValue& conv, const RateValue& accurate,
                            const char* name) {
        if (!orthogonal) return;
        if (std::abs(conv.raw - accurate.raw) > 1e-6) {
            rep.warnings.push_back(std::string(name) +
                                   ": optimizer disagrees with the orthogonal-case equality by " +
                                   std::to_string(std::abs(conv.raw - accurate.raw)));
        }
        conv = accurate;
    };
    reconcile(rep.six_state_orthogonal, rep.f1_conv, rep.f1, "f1_conv");
    reconcile(rep.bb84_plane_orthogonal, rep.g1_conv, rep.g1, "g1_conv");
    reconcile(rep.bb84_any_orthogonal, rep.j1_conv, rep.j1, "j1_conv");

    if (rep.plan_f1.degenerate) {
        rep.warnings.push_back("f1 plan: z column of R vanishes; arbitrary rotation returned");
    }
    if (rep.plan_g1.degenerate) {
        rep.warnings.push_back("g1 plan: (R_zz, R_xz) vanishes; identity rotation returned");
    }
    if (rep.plan_j1.degenerate) {
        rep.warnings.push_back("j1 plan: z and x columns of R are linearly dependent");
    }
    return rep;
}

}  // namespace qkdrates
