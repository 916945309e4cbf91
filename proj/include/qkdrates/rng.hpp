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
#include <cstdint>

#include "qkdrates/linalg.hpp"

namespace qkdrates {

// Deterministic 64-bit generator (splitmix64). Standard-library
// distributions are implementation-defined, so everything seeded is built
// on this generator to keep outputs bit-stable across toolchains.
class SplitMix64 {
 public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next();
    double uniform01();                  // [0, 1)
    double uniform(double lo, double hi);
    std::array<double, 2> gaussian_pair();  // Box-Muller, standard normal

 private:
    uint64_t state_;
};

// Stateless mix of a seed and a stream index; lets parallel loops draw
// independent deterministic substreams per index.
uint64_t mix_seed(uint64_t seed, uint64_t index);

// Haar-uniform rotation via a uniformly random unit quaternion.
Rotation3 random_rotation3(SplitMix64& rng);

// Uniform point on the probability 3-simplex (four weights summing to 1).
std::array<double, 4> random_prob4(SplitMix64& rng);

}  // namespace qkdrates
