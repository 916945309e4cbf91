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

#include "qkdrates/entropy.hpp"

#include <cmath>
#include <string>

#include "qkdrates/errors.hpp"

namespace qkdrates {

namespace {

double plogp(double p) {
    return p > 0 ? -p * std::log2(p) : 0.0;
}

}  // namespace

double binary_entropy(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12) {
        throw OutOfRange("binary_entropy: p = " + std::to_string(p) + " outside [0, 1]");
    }
    p = std::min(1.0, std::max(0.0, p));
    return plogp(p) + plogp(1.0 - p);
}

double shannon_entropy(std::span<const double> q) {
    double sum = 0;
    double h = 0;
    for (double v : q) {
        if (v < -1e-12) {
            throw NotNormalized("shannon_entropy: negative entry " + std::to_string(v));
        }
        sum += v;
        h += plogp(std::max(0.0, v));
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw NotNormalized("shannon_entropy: entries sum to " + std::to_string(sum));
    }
    return h;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    const auto n = rho.rows();
    if (n != rho.cols() || n < 1 || n > 16) {
        throw NotDensityMatrix("von_neumann_entropy: unsupported dimension");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw NotDensityMatrix("von_neumann_entropy: matrix not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9) {
        throw NotDensityMatrix("von_neumann_entropy: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double h = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = es.eigenvalues()[i];
        if (lambda < -1e-10) {
            throw NotDensityMatrix("von_neumann_entropy: eigenvalue " + std::to_string(lambda));
        }
        h += plogp(std::max(0.0, lambda));
    }
    return h;
}

double h_sqrt(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12) {
        throw OutOfRange("h_sqrt: x = " + std::to_string(x) + " outside [0, 1]");
    }
    x = std::min(1.0, std::max(0.0, x));
    return binary_entropy((1.0 + std::sqrt(x)) / 2.0);
}

}  // namespace qkdrates
