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

// Times the OpenMP scan kernels against the serial reference and checks
// that both modes return bit-identical results. Not part of the test
// suite; run manually: build/benchmarks/qkdrates_bench [grid] [samples]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qkdrates/channel.hpp"
#include "qkdrates/optimize.hpp"
#include "qkdrates/rates.hpp"

using namespace qkdrates;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    SearchConfig cfg;
    cfg.coarse_grid = argc > 1 ? std::atoi(argv[1]) : 48;
    cfg.samples = argc > 2 ? std::atoi(argv[2]) : 200000;
    const QubitChannel c = random_unital(20260814);
    int mismatches = 0;

    std::printf("threads available: %d\n", threads());

    {
        auto objective = [&c](const Rotation3& ob) {
            const Mat3 m = ob * c.r;
            return m(0, 0) + m(1, 1) + m(2, 2);
        };
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = maximize_so3(objective, cfg, ExecMode::serial);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = maximize_so3(objective, cfg, ExecMode::parallel);
        const double tp = seconds_since(t0);
        const bool match = serial.value == parallel.value &&
                           (serial.argmax - parallel.argmax).cwiseAbs().maxCoeff() == 0.0;
        if (!match) ++mismatches;
        std::printf("maximize_so3   grid=%-6d serial %8.3f ms | parallel %8.3f ms | speedup %.2fx | match %s\n",
                    cfg.coarse_grid, ts * 1e3, tp * 1e3, ts / tp, match ? "yes" : "NO");
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        const auto serial =
            brute_force_max(Setting::six_state_two_side, c, cfg, ExecMode::serial);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel =
            brute_force_max(Setting::six_state_two_side, c, cfg, ExecMode::parallel);
        const double tp = seconds_since(t0);
        const bool match = serial.value == parallel.value &&
                           (serial.oa - parallel.oa).cwiseAbs().maxCoeff() == 0.0 &&
                           (serial.ob - parallel.ob).cwiseAbs().maxCoeff() == 0.0;
        if (!match) ++mismatches;
        std::printf("brute_force    n=%-9d serial %8.3f ms | parallel %8.3f ms | speedup %.2fx | match %s\n",
                    cfg.samples, ts * 1e3, tp * 1e3, ts / tp, match ? "yes" : "NO");
    }

    if (mismatches) {
        std::printf("FAILURE: %d kernel(s) diverged between modes\n", mismatches);
        return 1;
    }
    return 0;
}
