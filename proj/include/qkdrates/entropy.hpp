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

#include <span>

#include <Eigen/Dense>

namespace qkdrates {

// All entropies are in bits (log base 2).

// h(p) = -p log p - (1-p) log(1-p), with 0 log 0 = 0. Inputs within 1e-12
// outside [0, 1] are clamped; anything further raises OutOfRange.
double binary_entropy(double p);

// H[q] = -sum q_k log q_k. Entries may undershoot zero by at most 1e-12
// (clamped); the sum must be 1 within 1e-9. Raises NotNormalized.
double shannon_entropy(std::span<const double> q);

// Von Neumann entropy of a density matrix of dimension <= 16. The matrix
// must be Hermitian within 1e-10 and have unit trace within 1e-9;
// eigenvalues >= -1e-10 are clamped to zero. Raises NotDensityMatrix.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// h((1 + sqrt(x)) / 2) for x in [0, 1]; concave in x. Raises OutOfRange.
double h_sqrt(double x);

}  // namespace qkdrates
