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

#include "qkdrates/channel.hpp"
#include "qkdrates/rates.hpp"

namespace qkdrates {

// Purification of a Choi matrix on A (x) B (x) E with dim E = 4; amplitude
// index a*8 + b*4 + k. Tracing out E recovers the Choi matrix.
struct PureState16 {
    Eigen::Matrix<std::complex<double>, 16, 1> amplitudes =
        Eigen::Matrix<std::complex<double>, 16, 1>::Zero();
};

// Classical-quantum state: label distribution over x in {0,1} with a
// normalized conditional density matrix per label.
struct CqState {
    std::array<double, 2> p{0.5, 0.5};
    std::array<Eigen::Matrix4cd, 2> conditional{Eigen::Matrix4cd::Zero(),
                                                Eigen::Matrix4cd::Zero()};
};

// Spectral-decomposition purification; eigenvalues below -1e-10 raise
// NotPositive, smaller negatives clamp to zero. Eigenvector phases are fixed
// by making the largest-magnitude component real positive, so the output is
// reproducible.
PureState16 purify_choi(const ChoiMatrix& rho);

// Alice's z measurement on system A of the purification: p[x] is the
// outcome probability and conditional[x] the environment state given x.
CqState measure_alice_z(const PureState16& psi);

// Ground-truth key rate H(X|E) - H(X|Y) computed from first principles:
// purify the Choi matrix, hand Eve the environment, measure z on both ends.
// Works for any completely positive trace-preserving qubit channel.
RateValue rate_from_choi(const QubitChannel& c);

// Partial twirl (1/4) sum_a (conj(sigma_a) (x) sigma_a) rho (.)^dagger.
// Projects onto the Bell-diagonal subspace; Bell weights are preserved.
ChoiMatrix twirl(const ChoiMatrix& rho);

}  // namespace qkdrates
