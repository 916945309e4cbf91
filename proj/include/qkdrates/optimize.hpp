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

#include <cstdint>
#include <functional>
#include <utility>

#include "qkdrates/rates.hpp"

namespace qkdrates {

struct SearchConfig {
    int coarse_grid = 24;     // grid points per Euler angle
    int refine_iters = 200;   // simplex / golden-section refinement budget
    double tol = 1e-10;
    uint64_t seed = 0;        // seeds the randomized restarts and samplers
    int samples = 10000;      // evaluation count for brute_force_max
};

// Kernels come in a serial reference and an OpenMP variant. Results are
// required to match bit for bit: reductions pick the maximum with ties
// broken toward the smallest evaluation index, which is order-independent.
enum class ExecMode { serial, parallel };

template <typename Rot>
struct SearchResult {
    double value = 0;
    Rot argmax = Rot::Identity();
    long long evaluations = 0;
};

using ObjectiveSo3 = std::function<double(const Rotation3&)>;
using ObjectiveSo2 = std::function<double(const Rotation2&)>;

// Coarse Euler-angle scan (coarse_grid^3 points), then Nelder-Mead
// refinement from the best cell plus 8 seeded random restarts. The result
// never falls below the best grid value; every returned value is an actual
// objective evaluation. Deterministic given cfg.
SearchResult<Rotation3> maximize_so3(const ObjectiveSo3& objective, const SearchConfig& cfg,
                                     ExecMode mode = ExecMode::parallel);

// Dense angle grid (coarse_grid^2 points over [0, 2pi)), then golden-section
// refinement around the best cell. Deterministic given cfg.
SearchResult<Rotation2> maximize_so2(const ObjectiveSo2& objective, const SearchConfig& cfg,
                                     ExecMode mode = ExecMode::parallel);

// Conventional-estimation one-side rates, defined only as maxima over the
// receiver rotation. The objective of tilde_F1 is 1 - H[q(diag(O R))]; the
// diagonal of O R always yields a valid Bell-weight vector for completely
// positive unital channels (checked at runtime, AssertionFailure otherwise).
std::pair<RateValue, Rotation3> tilde_F1(const QubitChannel& c, const SearchConfig& cfg);
// Objective 1 - h((1+S'_zz)/2) - h((1+S'_xx)/2) over plane rotations.
std::pair<RateValue, Rotation2> tilde_G1(const QubitChannel& c, const SearchConfig& cfg);
// Objective 1 - h((1+R'_zz)/2) - h((1+R'_xx)/2) over full rotations.
std::pair<RateValue, Rotation3> tilde_J1(const QubitChannel& c, const SearchConfig& cfg);

// The six accurate-estimation settings, used to verify the closed-form
// optima by sampling.
enum class Setting {
    six_state_one_side,
    six_state_two_side,
    bb84_plane_one_side,
    bb84_plane_two_side,
    bb84_any_one_side,
    bb84_any_two_side,
};

struct BruteForceResult {
    double value = 0;
    Rotation3 oa = Rotation3::Identity();  // identity for one-side settings
    Rotation3 ob = Rotation3::Identity();
    long long evaluations = 0;
};

// Evaluates cfg.samples Haar/uniform random compensations (receiver only
// for one-side settings), then refines the best sample with Nelder-Mead.
// Every evaluation is a true rate of a composed channel, so the result can
// never exceed the corresponding closed-form optimum.
BruteForceResult brute_force_max(Setting setting, const QubitChannel& c, const SearchConfig& cfg,
                                 ExecMode mode = ExecMode::parallel);

}  // namespace qkdrates
