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

#include "qkdrates/oracle.hpp"

#include <cmath>
#include <complex>

#include "qkdrates/entropy.hpp"
#include "qkdrates/errors.hpp"

namespace qkdrates {

namespace {

using Complex = std::complex<double>;

}  // namespace

PureState16 purify_choi(const ChoiMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.m);
    PureState16 psi;
    double norm2 = 0;
    for (int k = 0; k < 4; ++k) {
        double lam = es.eigenvalues()[k];
        if (lam < -kChoiPsdTol) {
            throw NotPositive("Choi matrix has eigenvalue " + std::to_string(lam));
        }
        lam = std::max(lam, 0.0);
        Eigen::Vector4cd v = es.eigenvectors().col(k);
        int lead = 0;
        for (int i = 1; i < 4; ++i) {
            if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
        }
        if (std::abs(v[lead]) > 0) v *= std::conj(v[lead]) / std::abs(v[lead]);
        const double w = std::sqrt(lam);
        for (int ab = 0; ab < 4; ++ab) psi.amplitudes[ab * 4 + k] = w * v[ab];
        norm2 += lam;
    }
    psi.amplitudes /= std::sqrt(norm2);
    return psi;
}

CqState measure_alice_z(const PureState16& psi) {
    CqState out;
    for (int x = 0; x < 2; ++x) {
        // phi_x[b*4 + k] = psi[x*8 + b*4 + k]; rho_E^x = Tr_B |phi_x><phi_x|.
        Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
        for (int b = 0; b < 2; ++b) {
            for (int k = 0; k < 4; ++k) {
                for (int k2 = 0; k2 < 4; ++k2) {
                    rho(k, k2) += psi.amplitudes[x * 8 + b * 4 + k] *
                                  std::conj(psi.amplitudes[x * 8 + b * 4 + k2]);
                }
            }
        }
        const double p = rho.real().trace();
        out.p[x] = p;
        out.conditional[x] = p > 0 ? Eigen::Matrix4cd(rho / p) : Eigen::Matrix4cd::Zero();
    }
    return out;
}

RateValue rate_from_choi(const QubitChannel& c) {
    const PureState16 psi = purify_choi(choi_from_stokes(c));
    const CqState cq = measure_alice_z(psi);

    // H(X|E) = H(rho_XE) - H(rho_E) on the block-diagonal cq state.
    Eigen::MatrixXcd rho_xe = Eigen::MatrixXcd::Zero(8, 8);
    Eigen::MatrixXcd rho_e = Eigen::MatrixXcd::Zero(4, 4);
    for (int x = 0; x < 2; ++x) {
        const Eigen::Matrix4cd block = cq.p[x] * cq.conditional[x];
        rho_xe.block<4, 4>(4 * x, 4 * x) = block;
        rho_e += block;
    }
    const double h_x_given_e = von_neumann_entropy(rho_xe) - von_neumann_entropy(rho_e);

    // H(X|Y) from the joint outcome distribution of z measurements:
    // P(x, y) = (1/2) * (1 + (-1)^y ((-1)^x R_zz + t_z)) / 2.
    std::array<double, 4> p_xy{};
    std::array<double, 2> p_y{};
    for (int x = 0; x < 2; ++x) {
        const double mz = (x == 0 ? 1.0 : -1.0) * c.r(kAxisZ, kAxisZ) + c.t[kAxisZ];
        for (int y = 0; y < 2; ++y) {
            const double p = 0.5 * 0.5 * (1.0 + (y == 0 ? 1.0 : -1.0) * mz);
            p_xy[2 * x + y] = p;
            p_y[y] += p;
        }
    }
    const double h_x_given_y = shannon_entropy(p_xy) - shannon_entropy(p_y);

    return make_rate(h_x_given_e - h_x_given_y);
}

ChoiMatrix twirl(const ChoiMatrix& rho) {
    ChoiMatrix out;
    out.m = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 4; ++a) {
        Eigen::Matrix2cd sigma = Eigen::Matrix2cd::Identity();
        if (a > 0) sigma = pauli_sigma(a - 1);
        Eigen::Matrix4cd w = Eigen::Matrix4cd::Zero();
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                w.block<2, 2>(2 * i, 2 * j) = std::conj(sigma(i, j)) * sigma;
            }
        }
        out.m += 0.25 * w * rho.m * w.adjoint();
    }
    return out;
}

}  // namespace qkdrates
