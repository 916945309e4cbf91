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

#include <array>
#include <complex>
#include <cstdint>
#include <optional>

#include "qkdrates/linalg.hpp"

namespace qkdrates {

inline constexpr double kUnitalTol = 1e-12;    // |t| bound for unital channels
inline constexpr double kCpWeightTol = 1e-12;  // Bell weights >= -this pass
inline constexpr double kChoiPsdTol = 1e-10;   // Choi eigenvalue tolerance

// A qubit channel in Stokes form: Bloch vectors map as theta -> R theta + t,
// with vector components ordered (z, x, y). Unital channels have t = 0.
struct QubitChannel {
    Mat3 r = Mat3::Identity();
    Vec3 t = Vec3::Zero();
};

// The measured biases Q_ab0 / Q_ab1 per basis pair; a is the sender basis,
// b the receiver basis. All nine pairs are required for tomography.
struct BiasTable {
    std::array<std::array<double, 3>, 3> q0{};  // [a][b]
    std::array<std::array<double, 3>, 3> q1{};
    std::array<std::array<bool, 3>, 3> present{};

    void set(Axis a, Axis b, double q0_value, double q1_value);
};

// Choi operator of the channel on the joint input/output system, basis
// |a b> with index 2a + b (a = sender-side bit).
struct ChoiMatrix {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
};

// Bell-basis weights (q_i, q_z, q_x, q_y) of the channel's diagonal core.
// Sums to 1 by construction; nonnegative iff the unital channel is
// completely positive.
struct PauliDistribution {
    double q_i = 1;
    double q_z = 0;
    double q_x = 0;
    double q_y = 0;

    std::array<double, 4> as_array() const { return {q_i, q_z, q_x, q_y}; }
    double min() const;
};

// Bell weights of the Pauli channel with R = diag(e). The four weights are
// (1 +- e_z +- e_x +- e_y)/4 with an even number of minus signs.
PauliDistribution pauli_distribution(const Vec3& e);

// Inverse of pauli_distribution: diagonal entries (e_z, e_x, e_y) from q.
Vec3 diagonal_from_distribution(const PauliDistribution& q);

// Pauli matrix for an axis (z, x, y) and the four Bell states ordered
// (i, z, x, y); |psi_a> = (I x sigma_a) |psi_i>.
Eigen::Matrix2cd pauli_sigma(int axis);
Eigen::Vector4cd bell_state(int a);

QubitChannel stokes_from_biases(const BiasTable& b);
BiasTable biases_from_stokes(const QubitChannel& c);

ChoiMatrix choi_from_stokes(const QubitChannel& c);

// Bell-basis diagonal of a Choi matrix.
PauliDistribution bell_weights(const ChoiMatrix& rho);

// Checks |t| <= unital_tol and nonnegativity of the Bell weights of the
// signed-SVD core; rotations preserve complete positivity, so for unital
// channels this is equivalent to positivity of the Choi operator. Returns
// the weights. Raises NotUnital or NotCompletelyPositive.
PauliDistribution validate_unital_cp(const QubitChannel& c, double unital_tol = kUnitalTol);

// Compensated channel: R' = O_B R O_A, t' = O_B t. Absent rotation = identity.
QubitChannel compose(const QubitChannel& c,
                     const std::optional<Rotation3>& oa,
                     const std::optional<Rotation3>& ob);

// Named test families; every family is a completely positive unital channel.
QubitChannel family_identity();
QubitChannel family_depolarizing(double qber);  // R = (1 - 2 Q) I
QubitChannel family_phase_flip(double p);       // R = diag(1, 1-2p, 1-2p)
QubitChannel family_bit_flip(double p);         // R = diag(1-2p, 1, 1-2p)
QubitChannel family_rotated_pauli(const std::array<double, 4>& q,
                                  const std::array<double, 3>& euler_a,
                                  const std::array<double, 3>& euler_b);

// R = B diag(e) A with Haar-uniform A, B and e drawn from a uniformly
// random Bell-weight vector; t = 0. Always completely positive;
// deterministic per seed.
QubitChannel random_unital(uint64_t seed);

}  // namespace qkdrates
