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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qkdrates/channel.hpp"
#include "qkdrates/errors.hpp"
#include "qkdrates/rng.hpp"
#include "test_helpers.hpp"

using namespace qkdrates;

namespace {

BiasTable identity_biases() {
    BiasTable b;
    for (int a = 0; a < 3; ++a) {
        for (int r = 0; r < 3; ++r) {
            const double v = a == r ? 1.0 : 0.0;
            b.set(static_cast<Axis>(a), static_cast<Axis>(r), v, v);
        }
    }
    return b;
}

Eigen::Matrix2cd trace_out_sender(const ChoiMatrix& rho) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int b = 0; b < 2; ++b) {
        for (int bp = 0; bp < 2; ++bp) {
            for (int a = 0; a < 2; ++a) out(b, bp) += rho.m(2 * a + b, 2 * a + bp);
        }
    }
    return out;
}

std::vector<double> sorted_eigenvalues(const ChoiMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.m, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("pauli_distribution reference points and inverse") {
    const PauliDistribution unit = pauli_distribution(Vec3(1, 1, 1));
    CHECK(unit.q_i == 1.0);
    CHECK(unit.q_z == 0.0);
    CHECK(unit.q_x == 0.0);
    CHECK(unit.q_y == 0.0);

    const PauliDistribution depol = pauli_distribution(Vec3(0.9, 0.9, 0.9));
    CHECK(std::abs(depol.q_i - 0.925) <= 1e-15);
    CHECK(std::abs(depol.q_z - 0.025) <= 1e-15);
    CHECK(std::abs(depol.q_x - 0.025) <= 1e-15);
    CHECK(std::abs(depol.q_y - 0.025) <= 1e-15);

    SplitMix64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto q = random_prob4(rng);
        const Vec3 e = diagonal_from_distribution(PauliDistribution{q[0], q[1], q[2], q[3]});
        const PauliDistribution back = pauli_distribution(e);
        const auto arr = back.as_array();
        for (int k = 0; k < 4; ++k) CHECK(std::abs(arr[k] - q[k]) <= 1e-12);
    }
}

TEST_CASE("stokes_from_biases basic points") {
    const QubitChannel ident = stokes_from_biases(identity_biases());
    CHECK((ident.r - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(ident.t.norm() <= 1e-15);

    BiasTable b;
    for (int a = 0; a < 3; ++a) {
        for (int r = 0; r < 3; ++r) b.set(static_cast<Axis>(a), static_cast<Axis>(r), 0, 0);
    }
    b.set(kAxisZ, kAxisZ, 0.9, 0.7);
    const QubitChannel c = stokes_from_biases(b);
    CHECK(std::abs(c.r(kAxisZ, kAxisZ) - 0.8) <= 1e-15);
    CHECK(std::abs(c.t[kAxisZ] - 0.1) <= 1e-15);
}

TEST_CASE("stokes_from_biases validation") {
    BiasTable incomplete;
    incomplete.set(kAxisZ, kAxisZ, 1, 1);
    CHECK_THROWS_AS(stokes_from_biases(incomplete), MissingPair);

    BiasTable bad = identity_biases();
    bad.set(kAxisX, kAxisY, 1.5, 0.0);
    CHECK_THROWS_AS(stokes_from_biases(bad), OutOfRange);
}

TEST_CASE("bias round-trip") {
    const BiasTable ident = biases_from_stokes(family_identity());
    for (int a = 0; a < 3; ++a) {
        for (int r = 0; r < 3; ++r) {
            const double expect = a == r ? 1.0 : 0.0;
            CHECK(std::abs(ident.q0[a][r] - expect) <= 1e-15);
            CHECK(std::abs(ident.q1[a][r] - expect) <= 1e-15);
        }
    }

    SplitMix64 rng(32);
    for (int i = 0; i < 100; ++i) {
        QubitChannel c;
        c.r = qkdtest::random_matrix3(rng, 0.5);
        c.t = Vec3(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
        const BiasTable b = biases_from_stokes(c);
        const QubitChannel back = stokes_from_biases(b);
        CHECK((back.r - c.r).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((back.t - c.t).cwiseAbs().maxCoeff() <= 1e-12);
    }

    const BiasTable unital = biases_from_stokes(random_unital(7));
    for (int a = 0; a < 3; ++a) {
        for (int r = 0; r < 3; ++r) {
            CHECK(std::abs(unital.q0[a][r] - unital.q1[a][r]) <= 1e-15);
        }
    }
}

TEST_CASE("choi_from_stokes special channels") {
    const ChoiMatrix ident = choi_from_stokes(family_identity());
    const Eigen::Vector4cd psi = bell_state(0);
    CHECK((ident.m - psi * psi.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);

    QubitChannel zero;
    zero.r = Mat3::Zero();
    const ChoiMatrix depol = choi_from_stokes(zero);
    CHECK((depol.m - 0.25 * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("choi_from_stokes structural invariants") {
    SplitMix64 rng(33);
    for (int i = 0; i < 50; ++i) {
        const QubitChannel c = random_unital(rng.next());
        const ChoiMatrix rho = choi_from_stokes(c);
        CHECK((rho.m - rho.m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(std::abs(rho.m.trace().real() - 1.0) <= 1e-12);
        CHECK(std::abs(rho.m.trace().imag()) <= 1e-15);
        const Eigen::Matrix2cd reduced = trace_out_sender(rho);
        CHECK((reduced - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("Pauli channels give Bell-diagonal Choi matrices") {
    SplitMix64 rng(34);
    for (int i = 0; i < 25; ++i) {
        const auto q = random_prob4(rng);
        const Vec3 e = diagonal_from_distribution(PauliDistribution{q[0], q[1], q[2], q[3]});
        const ChoiMatrix rho = choi_from_stokes(qkdtest::diag_channel(e[0], e[1], e[2]));

        Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
        for (int a = 0; a < 4; ++a) {
            const Eigen::Vector4cd psi = bell_state(a);
            expect += q[a] * (psi * psi.adjoint());
        }
        CHECK((rho.m - expect).cwiseAbs().maxCoeff() <= 1e-12);

        const auto w = bell_weights(rho).as_array();
        for (int a = 0; a < 4; ++a) CHECK(std::abs(w[a] - q[a]) <= 1e-12);
    }
}

TEST_CASE("Choi spectrum is invariant under compensation") {
    SplitMix64 rng(35);
    for (int i = 0; i < 25; ++i) {
        const QubitChannel c = random_unital(rng.next());
        const auto base = sorted_eigenvalues(choi_from_stokes(c));
        const Rotation3 oa = random_rotation3(rng);
        const Rotation3 ob = random_rotation3(rng);
        const auto moved = sorted_eigenvalues(choi_from_stokes(compose(c, oa, ob)));
        for (int k = 0; k < 4; ++k) CHECK(std::abs(base[k] - moved[k]) <= 1e-10);
    }
}

TEST_CASE("validate_unital_cp verdicts") {
    const PauliDistribution q = validate_unital_cp(family_identity());
    CHECK(std::abs(q.q_i - 1.0) <= 1e-15);
    CHECK(std::abs(q.q_z) <= 1e-15);

    try {
        validate_unital_cp(qkdtest::diag_channel(-0.9, 0.8, 0.7));
        FAIL("expected NotCompletelyPositive");
    } catch (const NotCompletelyPositive& e) {
        CHECK(std::abs(e.offending_weight - (-0.35)) <= 1e-12);
    }

    QubitChannel shifted;
    shifted.t = Vec3(0.1, 0, 0);
    CHECK_THROWS_AS(validate_unital_cp(shifted), NotUnital);
}

TEST_CASE("validate_unital_cp agrees with the Choi spectrum") {
    SplitMix64 rng(36);
    int valid = 0, invalid = 0;
    for (int i = 0; i < 1000; ++i) {
        QubitChannel c;
        // Small matrices land inside the positivity body, large ones outside;
        // both verdicts must agree with the spectrum either way.
        c.r = qkdtest::random_matrix3(rng, i % 2 == 0 ? 0.2 : 1.0);
        bool ok = true;
        try {
            validate_unital_cp(c);
        } catch (const NotCompletelyPositive&) {
            ok = false;
        }
        (ok ? valid : invalid) += 1;
        const auto ev = sorted_eigenvalues(choi_from_stokes(c));
        if (ok) {
            CHECK(ev.front() >= -1e-10);
        } else {
            CHECK(ev.front() <= 1e-10);
        }
    }
    // The sample must exercise both verdicts to mean anything.
    CHECK(valid > 0);
    CHECK(invalid > 0);
}

TEST_CASE("compose applies rotations on the documented sides") {
    const QubitChannel c = random_unital(99);
    const QubitChannel same = compose(c, Rotation3(Rotation3::Identity()),
                                      Rotation3(Rotation3::Identity()));
    CHECK((same.r - c.r).cwiseAbs().maxCoeff() <= 1e-15);

    const SignedSvd3 s = signed_svd3(c.r);
    const QubitChannel diag = compose(c, Rotation3(s.a.transpose()), Rotation3(s.b.transpose()));
    Mat3 off = diag.r;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);

    SplitMix64 rng(37);
    const Rotation3 o1 = random_rotation3(rng);
    const Rotation3 o2 = random_rotation3(rng);
    const QubitChannel two_step = compose(compose(c, o1, std::nullopt), o2, std::nullopt);
    const QubitChannel one_step = compose(c, Rotation3(o1 * o2), std::nullopt);
    CHECK((two_step.r - one_step.r).cwiseAbs().maxCoeff() <= 1e-13);

    QubitChannel with_t = c;
    with_t.t = Vec3(0.1, -0.2, 0.05);
    const QubitChannel moved = compose(with_t, std::nullopt, o1);
    CHECK((moved.t - o1 * with_t.t).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((moved.r - o1 * with_t.r).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("channel families") {
    CHECK((family_identity().r - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((family_depolarizing(0.0).r - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((family_depolarizing(0.05).r - 0.9 * Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((family_phase_flip(0.1).r - Mat3(Vec3(1, 0.8, 0.8).asDiagonal()))
              .cwiseAbs()
              .maxCoeff() <= 1e-15);
    CHECK((family_bit_flip(0.1).r - Mat3(Vec3(0.8, 1, 0.8).asDiagonal()))
              .cwiseAbs()
              .maxCoeff() <= 1e-15);

    CHECK_THROWS_AS(family_depolarizing(-0.01), OutOfRange);
    CHECK_THROWS_AS(family_depolarizing(0.7), OutOfRange);
    CHECK_THROWS_AS(family_phase_flip(1.01), OutOfRange);
    CHECK_THROWS_AS(family_bit_flip(-0.5), OutOfRange);

    SplitMix64 rng(38);
    for (int i = 0; i < 25; ++i) {
        const auto q = random_prob4(rng);
        const QubitChannel c = family_rotated_pauli(
            q, {rng.uniform(0.0, 6.28), rng.uniform(0.0, 3.14), rng.uniform(0.0, 6.28)},
            {rng.uniform(0.0, 6.28), rng.uniform(0.0, 3.14), rng.uniform(0.0, 6.28)});
        CHECK_NOTHROW(validate_unital_cp(c));
    }
    CHECK_THROWS_AS(family_rotated_pauli({0.5, 0.5, 0.5, -0.5}, {0, 0, 0}, {0, 0, 0}),
                    OutOfRange);
    CHECK_THROWS_AS(family_rotated_pauli({0.5, 0.1, 0.1, 0.1}, {0, 0, 0}, {0, 0, 0}),
                    OutOfRange);
}

TEST_CASE("random_unital determinism and validity") {
    const QubitChannel a = random_unital(12345);
    const QubitChannel b = random_unital(12345);
    CHECK((a.r - b.r).cwiseAbs().maxCoeff() == 0.0);
    const QubitChannel c = random_unital(12346);
    CHECK((a.r - c.r).cwiseAbs().maxCoeff() > 1e-3);

    SplitMix64 rng(39);
    for (int i = 0; i < 200; ++i) CHECK_NOTHROW(validate_unital_cp(random_unital(rng.next())));
}

TEST_CASE("random_unital weights are uniform on average") {
    // The generator draws its weight vector uniformly from the simplex. Two
    // law-of-large-numbers consequences: the Bell-diagonal weights of the
    // rotated channel average to 1/4 each (Haar symmetry), and the sorted
    // Choi eigenvalues (= the drawn weights as a multiset) average to the
    // order statistics of four uniform spacings, (1/16, 7/48, 13/48, 25/48).
    double mean_w[4] = {0, 0, 0, 0};
    double mean_sorted[4] = {0, 0, 0, 0};
    const int n = 100000;
    for (int seed = 0; seed < n; ++seed) {
        const QubitChannel c = random_unital(seed);
        const ChoiMatrix rho = choi_from_stokes(c);
        const auto w = bell_weights(rho).as_array();
        for (int k = 0; k < 4; ++k) mean_w[k] += w[k];
        const auto ev = sorted_eigenvalues(rho);
        for (int k = 0; k < 4; ++k) mean_sorted[k] += ev[k];
    }
    for (int k = 0; k < 4; ++k) CHECK(std::abs(mean_w[k] / n - 0.25) <= 0.01);
    const double expect[4] = {1.0 / 16, 7.0 / 48, 13.0 / 48, 25.0 / 48};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(mean_sorted[k] / n - expect[k]) <= 0.01);
}

}  // TEST_SUITE
