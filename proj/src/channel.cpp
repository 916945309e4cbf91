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

#include "qkdrates/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qkdrates/errors.hpp"
#include "qkdrates/rng.hpp"

namespace qkdrates {

namespace {

using Complex = std::complex<double>;

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

void check_bias_range(double v, const char* what) {
    if (!(v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12)) {
        throw OutOfRange(std::string(what) + " = " + std::to_string(v) + " outside [-1, 1]");
    }
}

}  // namespace

void BiasTable::set(Axis a, Axis b, double q0_value, double q1_value) {
    q0[a][b] = q0_value;
    q1[a][b] = q1_value;
    present[a][b] = true;
}

double PauliDistribution::min() const {
    return std::min(std::min(q_i, q_z), std::min(q_x, q_y));
}

PauliDistribution pauli_distribution(const Vec3& e) {
    PauliDistribution q;
    q.q_i = (1 + e[kAxisZ] + e[kAxisX] + e[kAxisY]) / 4;
    q.q_z = (1 + e[kAxisZ] - e[kAxisX] - e[kAxisY]) / 4;
    q.q_x = (1 - e[kAxisZ] + e[kAxisX] - e[kAxisY]) / 4;
    q.q_y = (1 - e[kAxisZ] - e[kAxisX] + e[kAxisY]) / 4;
    return q;
}

Vec3 diagonal_from_distribution(const PauliDistribution& q) {
    Vec3 e;
    e[kAxisZ] = q.q_i + q.q_z - q.q_x - q.q_y;
    e[kAxisX] = q.q_i - q.q_z + q.q_x - q.q_y;
    e[kAxisY] = q.q_i - q.q_z - q.q_x + q.q_y;
    return e;
}

Eigen::Matrix2cd pauli_sigma(int axis) {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    const Complex i(0, 1);
    switch (axis) {
        case kAxisZ:
            s(0, 0) = 1;
            s(1, 1) = -1;
            break;
        case kAxisX:
            s(0, 1) = 1;
            s(1, 0) = 1;
            break;
        case kAxisY:
            s(0, 1) = -i;
            s(1, 0) = i;
            break;
        default:
            throw OutOfRange("pauli_sigma: bad axis");
    }
    return s;
}

Eigen::Vector4cd bell_state(int a) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi[0] = inv_sqrt2;  // |00>
    psi[3] = inv_sqrt2;  // |11>
    if (a == 0) return psi;
    return kron2(Eigen::Matrix2cd::Identity(), pauli_sigma(a - 1)) * psi;
}

QubitChannel stokes_from_biases(const BiasTable& b) {
    QubitChannel c;
    for (int a = 0; a < 3; ++a) {
        for (int bb = 0; bb < 3; ++bb) {
            if (!b.present[a][bb]) {
                throw MissingPair("stokes_from_biases: pair (" + std::to_string(a) + "," +
                                  std::to_string(bb) + ") not measured");
            }
            check_bias_range(b.q0[a][bb], "bias q0");
            check_bias_range(b.q1[a][bb], "bias q1");
            c.r(bb, a) = (b.q0[a][bb] + b.q1[a][bb]) / 2;
        }
    }
    // t is overdetermined (one copy per sender basis); data produced by a
    // channel makes the three sender rows agree, so the z row is used.
    for (int bb = 0; bb < 3; ++bb) {
        c.t[bb] = (b.q0[kAxisZ][bb] - b.q1[kAxisZ][bb]) / 2;
    }
    return c;
}

BiasTable biases_from_stokes(const QubitChannel& c) {
    BiasTable b;
    for (int a = 0; a < 3; ++a) {
        for (int bb = 0; bb < 3; ++bb) {
            b.set(static_cast<Axis>(a), static_cast<Axis>(bb),
                  c.r(bb, a) + c.t[bb], c.r(bb, a) - c.t[bb]);
        }
    }
    return b;
}

ChoiMatrix choi_from_stokes(const QubitChannel& c) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix4cd rho = kron2(id, id);
    for (int b = 0; b < 3; ++b) {
        rho += c.t[b] * kron2(id, pauli_sigma(b));
    }
    for (int a = 0; a < 3; ++a) {
        const Eigen::Matrix2cd sa_t = pauli_sigma(a).transpose();
        for (int b = 0; b < 3; ++b) {
            rho += c.r(b, a) * kron2(sa_t, pauli_sigma(b));
        }
    }
    ChoiMatrix out;
    out.m = rho / 4.0;
    return out;
}

PauliDistribution bell_weights(const ChoiMatrix& rho) {
    double w[4];
    for (int a = 0; a < 4; ++a) {
        const Eigen::Vector4cd psi = bell_state(a);
        w[a] = (psi.adjoint() * rho.m * psi).value().real();
    }
    return PauliDistribution{w[0], w[1], w[2], w[3]};
}

PauliDistribution validate_unital_cp(const QubitChannel& c, double unital_tol) {
    const double tnorm = c.t.norm();
    if (tnorm > unital_tol) {
        throw NotUnital("channel is not unital: |t| = " + std::to_string(tnorm));
    }
    const PauliDistribution q = pauli_distribution(signed_svd3(c.r).e);
    const double qmin = q.min();
    if (qmin < -kCpWeightTol) {
        throw NotCompletelyPositive(
            "channel is not completely positive: min Bell weight = " + std::to_string(qmin),
            qmin);
    }
    return q;
}

QubitChannel compose(const QubitChannel& c,
                     const std::optional<Rotation3>& oa,
                     const std::optional<Rotation3>& ob) {
    QubitChannel out;
    out.r = c.r;
    out.t = c.t;
    if (oa) out.r = out.r * (*oa);
    if (ob) {
        out.r = (*ob) * out.r;
        out.t = (*ob) * out.t;
    }
    return out;
}

QubitChannel family_identity() {
    return QubitChannel{};
}

QubitChannel family_depolarizing(double qber) {
    // q = (1 - 3Q/2, Q/2, Q/2, Q/2) stays a distribution up to Q = 2/3.
    if (!(qber >= 0.0 && qber <= 2.0 / 3.0)) {
        throw OutOfRange("depolarizing: qber = " + std::to_string(qber) + " outside [0, 2/3]");
    }
    QubitChannel c;
    c.r = (1.0 - 2.0 * qber) * Mat3::Identity();
    return c;
}

QubitChannel family_phase_flip(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw OutOfRange("phase_flip: p = " + std::to_string(p) + " outside [0, 1]");
    }
    QubitChannel c;
    c.r = Vec3(1.0, 1.0 - 2.0 * p, 1.0 - 2.0 * p).asDiagonal();
    return c;
}

QubitChannel family_bit_flip(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw OutOfRange("bit_flip: p = " + std::to_string(p) + " outside [0, 1]");
    }
    QubitChannel c;
    c.r = Vec3(1.0 - 2.0 * p, 1.0, 1.0 - 2.0 * p).asDiagonal();
    return c;
}

QubitChannel family_rotated_pauli(const std::array<double, 4>& q,
                                  const std::array<double, 3>& euler_a,
                                  const std::array<double, 3>& euler_b) {
    double sum = 0;
    for (double v : q) {
        if (!(v >= -1e-12)) {
            throw OutOfRange("rotated_pauli: negative weight " + std::to_string(v));
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw OutOfRange("rotated_pauli: weights sum to " + std::to_string(sum));
    }
    const Vec3 e = diagonal_from_distribution(PauliDistribution{q[0], q[1], q[2], q[3]});
    QubitChannel c;
    c.r = rotation3_from_euler(euler_b[0], euler_b[1], euler_b[2]) * e.asDiagonal() *
          rotation3_from_euler(euler_a[0], euler_a[1], euler_a[2]);
    return c;
}

QubitChannel random_unital(uint64_t seed) {
    SplitMix64 rng(mix_seed(seed, 0x716b6472ULL));
    const Rotation3 b = random_rotation3(rng);
    const Rotation3 a = random_rotation3(rng);
    const auto q = random_prob4(rng);
    const Vec3 e = diagonal_from_distribution(PauliDistribution{q[0], q[1], q[2], q[3]});
    QubitChannel c;
    c.r = b * e.asDiagonal() * a;
    return c;
}

}  // namespace qkdrates
