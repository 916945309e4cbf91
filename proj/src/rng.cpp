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

#include "qkdrates/rng.hpp"

#include <cmath>

namespace qkdrates {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

uint64_t SplitMix64::next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

std::array<double, 2> SplitMix64::gaussian_pair() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = kTwoPi * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

uint64_t mix_seed(uint64_t seed, uint64_t index) {
    // One splitmix64 finalization round over the combined words.
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rotation3 random_rotation3(SplitMix64& rng) {
    double w, x, y, z;
    do {
        const auto g1 = rng.gaussian_pair();
        const auto g2 = rng.gaussian_pair();
        w = g1[0];
        x = g1[1];
        y = g2[0];
        z = g2[1];
    } while (w * w + x * x + y * y + z * z < 1e-24);
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    w /= n;
    x /= n;
    y /= n;
    z /= n;
    // Standard quaternion-to-matrix map, rows/columns reordered to the
    // library's (z, x, y) axis convention.
    Rotation3 m;
    m(kAxisX, kAxisX) = 1 - 2 * (y * y + z * z);
    m(kAxisX, kAxisY) = 2 * (x * y - w * z);
    m(kAxisX, kAxisZ) = 2 * (x * z + w * y);
    m(kAxisY, kAxisX) = 2 * (x * y + w * z);
    m(kAxisY, kAxisY) = 1 - 2 * (x * x + z * z);
    m(kAxisY, kAxisZ) = 2 * (y * z - w * x);
    m(kAxisZ, kAxisX) = 2 * (x * z - w * y);
    m(kAxisZ, kAxisY) = 2 * (y * z + w * x);
    m(kAxisZ, kAxisZ) = 1 - 2 * (x * x + y * y);
    return m;
}

std::array<double, 4> random_prob4(SplitMix64& rng) {
    std::array<double, 4> w;
    double sum = 0;
    do {
        sum = 0;
        for (auto& v : w) {
            v = -std::log(1.0 - rng.uniform01());  // Exp(1)
            sum += v;
        }
    } while (sum < 1e-300);
    for (auto& v : w) v /= sum;
    return w;
}

}  // namespace qkdrates
