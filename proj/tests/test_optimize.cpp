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

#include <cmath>
#include <optional>

#include "qkdrates/errors.hpp"
#include "qkdrates/optimize.hpp"
#include "qkdrates/rates.hpp"
#include "qkdrates/rng.hpp"
#include "test_helpers.hpp"

using namespace qkdrates;

namespace {

double angle_of(const Rotation2& q) {
    return std::atan2(q(1, 0), q(0, 0));
}

double wrap_distance(double a, double b) {
    double d = std::remainder(a - b, 2 * M_PI);
    return std::abs(d);
}

QubitChannel skewed_cp_channel() {
    // Completely positive by construction, with generic non-orthogonal
    // columns of diag(e) A (e = (0.7, 0.4, 0.3)).
    return family_rotated_pauli({0.6, 0.25, 0.1, 0.05}, {0.4, 0.9, 1.3}, {0, 0, 0});
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("maximize_so3 solves the rotation Procrustes problem") {
    SplitMix64 rng(61);
    SearchConfig cfg;
    for (int rep = 0; rep < 3; ++rep) {
        const Mat3 m = qkdtest::random_matrix3(rng, 1.0);
        const auto sv = qkdtest::singular_values_oracle(m);
        const double det_sign = m.determinant() >= 0 ? 1.0 : -1.0;
        const double expect = sv[0] + sv[1] + det_sign * sv[2];

        auto objective = [&m](const Rotation3& o) { return (o * m.transpose()).trace(); };
        const auto res = maximize_so3(objective, cfg);
        CHECK(std::abs(res.value - expect) <= 1e-6);
        CHECK(is_rotation(res.argmax));
        CHECK(res.value == objective(res.argmax));
        CHECK(res.evaluations >= cfg.coarse_grid * cfg.coarse_grid * cfg.coarse_grid);
    }
}

TEST_CASE("maximize_so3 constant objective returns the first grid point") {
    SearchConfig cfg;
    cfg.coarse_grid = 8;
    const auto res = maximize_so3([](const Rotation3&) { return 0.375; }, cfg);
    CHECK(res.value == 0.375);
    const Rotation3 first = rotation3_from_euler(0.0, M_PI * 0.5 / cfg.coarse_grid, 0.0);
    CHECK((res.argmax - first).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("maximize_so3 converges on a smooth peak at the identity") {
    SearchConfig cfg;
    const auto res = maximize_so3([](const Rotation3& o) { return o.trace(); }, cfg);
    CHECK(res.value >= 3.0 - 1e-8);
    CHECK(res.value <= 3.0 + 1e-12);
}

TEST_CASE("maximize_so2 recovers an analytic argmax") {
    const double theta0 = 0.7;
    const Mat2 s = rotation2_from_angle(theta0) * Vec2(0.9, 0.4).asDiagonal();
    auto objective = [&s](const Rotation2& q) { return (q * s)(0, 0); };
    SearchConfig cfg;
    const auto res = maximize_so2(objective, cfg);
    CHECK(std::abs(res.value - 0.9) <= 1e-10);
    CHECK(wrap_distance(angle_of(res.argmax), -theta0) <= 1e-8);
    CHECK(res.value == objective(res.argmax));
}

TEST_CASE("maximize_so2 constant objective returns the first grid point") {
    SearchConfig cfg;
    const auto res = maximize_so2([](const Rotation2&) { return -2.5; }, cfg);
    CHECK(res.value == -2.5);
    CHECK((res.argmax - Mat2::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("maximize_so2 value is invariant under a phase shift of the objective") {
    SearchConfig cfg;
    auto shifted = [](double delta) {
        return [delta](const Rotation2& q) {
            const double phi = angle_of(q) + delta;
            return 0.7 * std::cos(3 * phi + 0.2) + 0.2 * std::sin(phi + 0.6);
        };
    };
    const double base = maximize_so2(shifted(0.0), cfg).value;
    for (double delta : {0.31, 1.7, 4.0}) {
        CHECK(std::abs(maximize_so2(shifted(delta), cfg).value - base) <= 1e-9);
    }
}

TEST_CASE("optimizers are deterministic and mode-independent") {
    const QubitChannel c = skewed_cp_channel();
    auto objective = [&c](const Rotation3& ob) {
        return -(ob * c.r - Mat3::Identity()).squaredNorm();
    };
    SearchConfig cfg;
    cfg.seed = 7;
    const auto a = maximize_so3(objective, cfg, ExecMode::parallel);
    const auto b = maximize_so3(objective, cfg, ExecMode::parallel);
    const auto s = maximize_so3(objective, cfg, ExecMode::serial);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
    CHECK((a.argmax - b.argmax).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.value == s.value);
    CHECK(a.evaluations == s.evaluations);
    CHECK((a.argmax - s.argmax).cwiseAbs().maxCoeff() == 0.0);

    const auto bf1 = brute_force_max(Setting::six_state_two_side, c, cfg, ExecMode::parallel);
    const auto bf2 = brute_force_max(Setting::six_state_two_side, c, cfg, ExecMode::serial);
    CHECK(bf1.value == bf2.value);
    CHECK(bf1.evaluations == bf2.evaluations);
    CHECK((bf1.ob - bf2.ob).cwiseAbs().maxCoeff() == 0.0);
    CHECK((bf1.oa - bf2.oa).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("doubling the grid never loses value") {
    SplitMix64 rng(62);
    const Mat3 m = qkdtest::random_matrix3(rng, 1.0);
    auto objective = [&m](const Rotation3& o) { return (o * m.transpose()).trace(); };
    SearchConfig coarse;
    coarse.coarse_grid = 12;
    SearchConfig fine;
    fine.coarse_grid = 24;
    CHECK(maximize_so3(objective, fine).value >= maximize_so3(objective, coarse).value - 1e-9);
}

TEST_CASE("search configuration validation") {
    auto objective = [](const Rotation2&) { return 0.0; };
    SearchConfig bad;
    bad.coarse_grid = 1;
    CHECK_THROWS_AS(maximize_so2(objective, bad), OutOfRange);
    bad = SearchConfig{};
    bad.tol = 0.0;
    CHECK_THROWS_AS(maximize_so2(objective, bad), OutOfRange);
    bad = SearchConfig{};
    bad.refine_iters = -1;
    CHECK_THROWS_AS(maximize_so2(objective, bad), OutOfRange);
    bad = SearchConfig{};
    bad.samples = 0;
    CHECK_THROWS_AS(brute_force_max(Setting::bb84_any_one_side, family_identity(), bad),
                    OutOfRange);
}

TEST_CASE("tilde_F1 matches F1 on Pauli channels and stays below it") {
    SearchConfig cfg;
    const QubitChannel pauli = qkdtest::diag_channel(0.8, 0.7, 0.6);
    const double f1 = six_state_F1_plan(pauli).first.raw;
    const auto [tf1, rot] = tilde_F1(pauli, cfg);
    CHECK(is_rotation(rot));
    CHECK(std::abs(tf1.raw - f1) <= 1e-9);

    const QubitChannel skew = skewed_cp_channel();
    REQUIRE_FALSE(six_state_orthogonality(skew));
    const double f1_skew = six_state_F1_plan(skew).first.raw;
    const double tf1_skew = tilde_F1(skew, cfg).first.raw;
    CHECK(f1_skew - tf1_skew > 1e-7);

    SearchConfig quick;
    quick.coarse_grid = 12;
    SplitMix64 rng(63);
    for (int i = 0; i < 60; ++i) {
        const QubitChannel c = random_unital(rng.next());
        CHECK(tilde_F1(c, quick).first.raw <= six_state_F1_plan(c).first.raw + 1e-9);
    }
}

TEST_CASE("tilde_G1 matches G1 on diagonal couplings and stays below it") {
    SearchConfig cfg;
    const QubitChannel diag = qkdtest::diag_channel(0.8, 0.7, 0.6);
    CHECK(std::abs(tilde_G1(diag, cfg).first.raw - bb84_G1_plan(diag).first.raw) <= 1e-9);

    const QubitChannel skew = skewed_cp_channel();
    REQUIRE_FALSE(bb84_orthogonality(skew));
    CHECK(bb84_G1_plan(skew).first.raw - tilde_G1(skew, cfg).first.raw > 1e-7);

    SplitMix64 rng(64);
    for (int i = 0; i < 60; ++i) {
        const QubitChannel c = random_unital(rng.next());
        CHECK(tilde_G1(c, cfg).first.raw <= bb84_G2(c).first.raw + 1e-9);
    }
}

TEST_CASE("tilde_J1 matches J1 on sorted diagonals and stays below it") {
    SearchConfig cfg;
    const QubitChannel diag = qkdtest::diag_channel(0.8, 0.7, 0.6);
    CHECK(std::abs(tilde_J1(diag, cfg).first.raw - bb84_J1(diag).rate.raw) <= 1e-9);

    const QubitChannel skew = skewed_cp_channel();
    REQUIRE_FALSE(bb84_any_orthogonality(skew));
    CHECK(bb84_J1(skew).rate.raw - tilde_J1(skew, cfg).first.raw > 1e-7);

    SearchConfig quick;
    quick.coarse_grid = 12;
    SplitMix64 rng(65);
    for (int i = 0; i < 60; ++i) {
        const QubitChannel c = random_unital(rng.next());
        CHECK(tilde_J1(c, quick).first.raw <= bb84_J1(c).rate.raw + 1e-9);
    }
}

TEST_CASE("brute_force_max approaches the closed forms from below") {
    SearchConfig cfg;
    const QubitChannel c = random_unital(501);

    const auto six = brute_force_max(Setting::six_state_two_side, c, cfg);
    const double f2 = six_state_F2(c).first.raw;
    CHECK(six.value <= f2 + 1e-12);
    CHECK(f2 - six.value <= 1e-6);

    const auto plane = brute_force_max(Setting::bb84_plane_two_side, c, cfg);
    const double g2 = bb84_G2(c).first.raw;
    CHECK(plane.value <= g2 + 1e-12);
    CHECK(g2 - plane.value <= 1e-6);

    const auto any2 = brute_force_max(Setting::bb84_any_two_side, c, cfg);
    CHECK(any2.value <= bb84_J2(c).first.raw + 1e-12);
    CHECK(bb84_J2(c).first.raw - any2.value <= 1e-6);
}

TEST_CASE("brute_force_max results are achievable compensations") {
    SearchConfig cfg;
    cfg.samples = 2000;
    SplitMix64 rng(66);
    for (int i = 0; i < 5; ++i) {
        const QubitChannel c = random_unital(rng.next());

        const auto one = brute_force_max(Setting::six_state_one_side, c, cfg);
        CHECK((one.oa - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(std::abs(six_state_accurate_rate(compose(c, std::nullopt, one.ob)).raw -
                       one.value) <= 1e-12);
        CHECK(one.value <= six_state_F1_plan(c).first.raw + 1e-12);

        const auto jb = brute_force_max(Setting::bb84_any_one_side, c, cfg);
        CHECK((jb.oa - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(std::abs(bb84_accurate_rate(compose(c, std::nullopt, jb.ob)).raw - jb.value) <=
              1e-12);
        CHECK(jb.value <= bb84_J1(c).rate.raw + 1e-12);

        const auto gb = brute_force_max(Setting::bb84_plane_one_side, c, cfg);
        CHECK(gb.value <= bb84_G1_plan(c).first.raw + 1e-12);

        const auto two = brute_force_max(Setting::six_state_two_side, c, cfg);
        QubitChannel moved = compose(c, two.oa, two.ob);
        CHECK(std::abs(six_state_accurate_rate(moved).raw - two.value) <= 1e-12);
    }
}

TEST_CASE("brute_force_max validation respects the setting family") {
    SearchConfig cfg;
    cfg.samples = 100;
    // Not completely positive, but a unital contraction: the BB84 worst-case
    // settings accept it, the six-state ones reject it.
    const QubitChannel remark = qkdtest::diag_channel(0.5, 0.7, 0.9);
    CHECK_THROWS_AS(brute_force_max(Setting::six_state_two_side, remark, cfg),
                    NotCompletelyPositive);
    const auto res = brute_force_max(Setting::bb84_any_one_side, remark, cfg);
    CHECK(res.value <= bb84_J1(remark).rate.raw + 1e-12);
}

}  // TEST_SUITE
