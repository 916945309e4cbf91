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

#include "qkdrates/optimize.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "qkdrates/channel.hpp"
#include "qkdrates/entropy.hpp"
#include "qkdrates/errors.hpp"
#include "qkdrates/rng.hpp"

namespace qkdrates {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

void check_config(const SearchConfig& cfg) {
    if (cfg.coarse_grid < 2) throw OutOfRange("SearchConfig.coarse_grid must be >= 2");
    if (!(cfg.tol > 0)) throw OutOfRange("SearchConfig.tol must be positive");
    if (cfg.refine_iters < 0) throw OutOfRange("SearchConfig.refine_iters must be >= 0");
    if (cfg.samples < 1) throw OutOfRange("SearchConfig.samples must be >= 1");
}

struct IndexedBest {
    double value = -std::numeric_limits<double>::infinity();
    long long index = -1;

    // Ties resolve toward the smallest index, so the reduction commutes and
    // the parallel scan matches the serial one bit for bit.
    void consider(double v, long long i) {
        if (v > value || (v == value && i < index)) {
            value = v;
            index = i;
        }
    }
    void merge(const IndexedBest& other) { consider(other.value, other.index); }
};

// Shared grid/sample scan. Evaluates eval(idx) for idx in [0, total) in
// either mode and returns the best (value, smallest index). Exceptions from
// worker threads are captured and rethrown on the calling thread.
template <typename Eval>
IndexedBest scan_indices(long long total, const Eval& eval, ExecMode mode) {
    IndexedBest best;
    if (mode == ExecMode::serial) {
        for (long long idx = 0; idx < total; ++idx) best.consider(eval(idx), idx);
        return best;
    }
    std::exception_ptr eptr = nullptr;
    std::atomic<bool> failed{false};
#pragma omp parallel
    {
        IndexedBest local;
#pragma omp for schedule(static) nowait
        for (long long idx = 0; idx < total; ++idx) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                local.consider(eval(idx), idx);
            } catch (...) {
#pragma omp critical(qkdrates_scan_failure)
                {
                    if (!eptr) eptr = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
#pragma omp critical(qkdrates_scan_merge)
        best.merge(local);
    }
    if (eptr) std::rethrow_exception(eptr);
    return best;
}

// Nelder-Mead ascent on R^d. Every probe goes through eval(), which the
// callers use to track the best point ever seen, so the search can only
// tighten a bound, never invent one.
template <typename Eval>
void nelder_mead(const Eval& eval, const std::vector<double>& start,
                 const std::vector<double>& steps, int max_iters, double tol) {
    const size_t d = start.size();
    std::vector<std::vector<double>> pts(d + 1, start);
    std::vector<double> vals(d + 1);
    for (size_t i = 0; i < d; ++i) pts[i + 1][i] += steps[i];
    for (size_t i = 0; i <= d; ++i) vals[i] = eval(pts[i]);

    std::vector<size_t> order(d + 1);
    for (int iter = 0; iter < max_iters; ++iter) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&vals](size_t a, size_t b) { return vals[a] > vals[b]; });
        const size_t best = order[0];
        const size_t worst = order[d];
        const size_t second_worst = order[d - 1];
        if (vals[best] - vals[worst] < tol) break;

        std::vector<double> centroid(d, 0.0);
        for (size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (size_t k = 0; k < d; ++k) centroid[k] += pts[i][k];
        }
        for (size_t k = 0; k < d; ++k) centroid[k] /= static_cast<double>(d);

        auto blend = [&](double coef) {
            std::vector<double> p(d);
            for (size_t k = 0; k < d; ++k) p[k] = centroid[k] + coef * (centroid[k] - pts[worst][k]);
            return p;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = eval(xr);
        if (fr > vals[best]) {
            std::vector<double> xe = blend(2.0);
            const double fe = eval(xe);
            if (fe > fr) {
                pts[worst] = std::move(xe);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(xr);
                vals[worst] = fr;
            }
            continue;
        }
        if (fr > vals[second_worst]) {
            pts[worst] = std::move(xr);
            vals[worst] = fr;
            continue;
        }
        std::vector<double> xc = fr > vals[worst] ? blend(0.5) : blend(-0.5);
        const double fc = eval(xc);
        if (fc > std::max(fr, vals[worst])) {
            pts[worst] = std::move(xc);
            vals[worst] = fc;
            continue;
        }
        for (size_t i = 0; i <= d; ++i) {
            if (i == best) continue;
            for (size_t k = 0; k < d; ++k) pts[i][k] = 0.5 * (pts[i][k] + pts[best][k]);
            vals[i] = eval(pts[i]);
        }
    }
}

struct BestRotation3 {
    double value = -std::numeric_limits<double>::infinity();
    Rotation3 rot = Rotation3::Identity();
    long long evaluations = 0;
};

// Haar-distributed Euler triple: uniform twist angles, cos(beta) uniform.
std::array<double, 3> haar_euler(SplitMix64& rng) {
    const double alpha = rng.uniform(0.0, kTwoPi);
    const double beta = std::acos(1.0 - 2.0 * rng.uniform01());
    const double gamma = rng.uniform(0.0, kTwoPi);
    return {alpha, beta, gamma};
}

// BB84 objectives stay defined on unital contractions (see rates.cpp); the
// six-state objectives need full complete positivity for valid Bell weights.
void check_unital_contraction(const QubitChannel& c) {
    if (c.t.norm() > kUnitalTol) {
        throw NotUnital("channel is not unital: |t| = " + std::to_string(c.t.norm()));
    }
    const double top = signed_svd3(c.r).e.cwiseAbs().maxCoeff();
    if (top > 1.0 + 1e-12) {
        throw NotCompletelyPositive(
            "map is not a contraction: largest singular value = " + std::to_string(top),
            1.0 - top);
    }
}

Rotation3 embed_zx_plane(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Rotation3 m = Rotation3::Identity();
    m(kAxisZ, kAxisZ) = c;
    m(kAxisZ, kAxisX) = -s;
    m(kAxisX, kAxisZ) = s;
    m(kAxisX, kAxisX) = c;
    return m;
}

}  // namespace

SearchResult<Rotation3> maximize_so3(const ObjectiveSo3& objective, const SearchConfig& cfg,
                                     ExecMode mode) {
    check_config(cfg);
    const long long n = cfg.coarse_grid;
    const long long total = n * n * n;
    // Beta samples cell midpoints: the endpoints 0 and pi are gimbal-locked
    // lines where alpha and gamma collapse to one angle.
    auto grid_rotation = [n](long long idx) {
        const long long k = idx % n;
        const long long j = (idx / n) % n;
        const long long i = idx / (n * n);
        const double alpha = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        const double beta = kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
        const double gamma = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        return rotation3_from_euler(alpha, beta, gamma);
    };
    const IndexedBest grid_best =
        scan_indices(total, [&](long long idx) { return objective(grid_rotation(idx)); }, mode);

    BestRotation3 best;
    best.value = grid_best.value;
    best.rot = grid_rotation(grid_best.index);
    best.evaluations = total;

    auto eval_angles = [&](const std::vector<double>& x) {
        const Rotation3 rot = rotation3_from_euler(x[0], x[1], x[2]);
        const double v = objective(rot);
        ++best.evaluations;
        if (v > best.value) {
            best.value = v;
            best.rot = rot;
        }
        return v;
    };

    const long long k = grid_best.index % n;
    const long long j = (grid_best.index / n) % n;
    const long long i = grid_best.index / (n * n);
    const std::vector<double> steps = {kPi / static_cast<double>(n),
                                       0.5 * kPi / static_cast<double>(n),
                                       kPi / static_cast<double>(n)};
    nelder_mead(eval_angles,
                {kTwoPi * static_cast<double>(i) / static_cast<double>(n),
                 kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n),
                 kTwoPi * static_cast<double>(k) / static_cast<double>(n)},
                steps, cfg.refine_iters, cfg.tol);
    for (int restart = 0; restart < 8; ++restart) {
        SplitMix64 rng(mix_seed(cfg.seed, 0x726573ULL + static_cast<uint64_t>(restart)));
        const auto angles = haar_euler(rng);
        nelder_mead(eval_angles, {angles[0], angles[1], angles[2]}, steps, cfg.refine_iters,
                    cfg.tol);
    }

    SearchResult<Rotation3> out;
    out.value = best.value;
    out.argmax = best.rot;
    out.evaluations = best.evaluations;
    return out;
}

SearchResult<Rotation2> maximize_so2(const ObjectiveSo2& objective, const SearchConfig& cfg,
                                     ExecMode mode) {
    check_config(cfg);
    const long long n = static_cast<long long>(cfg.coarse_grid) * cfg.coarse_grid;
    auto grid_theta = [n](long long idx) {
        return kTwoPi * static_cast<double>(idx) / static_cast<double>(n);
    };
    const IndexedBest grid_best = scan_indices(
        n, [&](long long idx) { return objective(rotation2_from_angle(grid_theta(idx))); }, mode);

    double best_value = grid_best.value;
    double best_theta = grid_theta(grid_best.index);
    long long evaluations = n;
    auto eval_theta = [&](double theta) {
        const double v = objective(rotation2_from_angle(theta));
        ++evaluations;
        if (v > best_value) {
            best_value = v;
            best_theta = theta;
        }
        return v;
    };

    // Golden-section ascent on the bracket one grid spacing either side of
    // the best cell.
    const double spacing = kTwoPi / static_cast<double>(n);
    double lo = best_theta - spacing;
    double hi = best_theta + spacing;
    const double invphi = 0.61803398874989484820458683436564;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = eval_theta(c);
    double fd = eval_theta(d);
    for (int iter = 0; iter < cfg.refine_iters && hi - lo > cfg.tol; ++iter) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = eval_theta(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = eval_theta(d);
        }
    }

    SearchResult<Rotation2> out;
    out.value = best_value;
    out.argmax = rotation2_from_angle(best_theta);
    out.evaluations = evaluations;
    return out;
}

std::pair<RateValue, Rotation3> tilde_F1(const QubitChannel& c, const SearchConfig& cfg) {
    validate_unital_cp(c);
    auto objective = [&c](const Rotation3& ob) {
        const Mat3 m = ob * c.r;
        const PauliDistribution q = pauli_distribution(Vec3(m(0, 0), m(1, 1), m(2, 2)));
        if (q.min() < -1e-9) {
            throw AssertionFailure(
                "twirled diagonal produced a negative Bell weight; the twirl of a CP unital "
                "channel must stay a state");
        }
        auto arr = q.as_array();
        double sum = 0;
        for (double& p : arr) {
            p = std::max(p, 0.0);
            sum += p;
        }
        for (double& p : arr) p /= sum;
        return 1.0 - shannon_entropy(arr);
    };
    const auto res = maximize_so3(objective, cfg);
    return {make_rate(res.value), res.argmax};
}

std::pair<RateValue, Rotation2> tilde_G1(const QubitChannel& c, const SearchConfig& cfg) {
    check_unital_contraction(c);
    const Mat2 s = c.r.topLeftCorner<2, 2>();
    auto objective = [&s](const Rotation2& qb) {
        const Mat2 sp = qb * s;
        return 1.0 - binary_entropy(0.5 * (1.0 + sp(0, 0))) -
               binary_entropy(0.5 * (1.0 + sp(1, 1)));
    };
    const auto res = maximize_so2(objective, cfg);
    return {make_rate(res.value), res.argmax};
}

std::pair<RateValue, Rotation3> tilde_J1(const QubitChannel& c, const SearchConfig& cfg) {
    check_unital_contraction(c);
    auto objective = [&c](const Rotation3& ob) {
        const Mat3 m = ob * c.r;
        return 1.0 - binary_entropy(0.5 * (1.0 + m(0, 0))) -
               binary_entropy(0.5 * (1.0 + m(1, 1)));
    };
    const auto res = maximize_so3(objective, cfg);
    return {make_rate(res.value), res.argmax};
}

BruteForceResult brute_force_max(Setting setting, const QubitChannel& c, const SearchConfig& cfg,
                                 ExecMode mode) {
    check_config(cfg);
    const bool two_side = setting == Setting::six_state_two_side ||
                          setting == Setting::bb84_plane_two_side ||
                          setting == Setting::bb84_any_two_side;
    const bool plane =
        setting == Setting::bb84_plane_one_side || setting == Setting::bb84_plane_two_side;
    const bool six_state =
        setting == Setting::six_state_one_side || setting == Setting::six_state_two_side;
    if (six_state) {
        validate_unital_cp(c);
    } else {
        check_unital_contraction(c);
    }
    const size_t dim = (plane ? 1u : 3u) * (two_side ? 2u : 1u);

    // Receiver angles first, then sender angles when present.
    auto rotations = [&](const std::vector<double>& x) {
        std::pair<Rotation3, Rotation3> out;  // (ob, oa)
        if (plane) {
            out.first = embed_zx_plane(x[0]);
            out.second = two_side ? embed_zx_plane(x[1]) : Rotation3::Identity();
        } else {
            out.first = rotation3_from_euler(x[0], x[1], x[2]);
            out.second =
                two_side ? rotation3_from_euler(x[3], x[4], x[5]) : Rotation3::Identity();
        }
        return out;
    };
    auto objective = [&](const std::vector<double>& x) {
        const auto [ob, oa] = rotations(x);
        std::optional<Rotation3> oa_opt;
        if (two_side) oa_opt = oa;
        const QubitChannel composed = compose(c, oa_opt, ob);
        return six_state ? six_state_accurate_rate(composed).raw
                         : bb84_accurate_rate(composed).raw;
    };
    auto sample_point = [&](long long idx) {
        SplitMix64 rng(mix_seed(cfg.seed, static_cast<uint64_t>(idx)));
        std::vector<double> x(dim);
        if (plane) {
            for (double& v : x) v = rng.uniform(0.0, kTwoPi);
        } else {
            const auto rb = haar_euler(rng);
            x[0] = rb[0];
            x[1] = rb[1];
            x[2] = rb[2];
            if (two_side) {
                const auto ra = haar_euler(rng);
                x[3] = ra[0];
                x[4] = ra[1];
                x[5] = ra[2];
            }
        }
        return x;
    };

    const long long total = cfg.samples;
    const IndexedBest sample_best =
        scan_indices(total, [&](long long idx) { return objective(sample_point(idx)); }, mode);

    double best_value = sample_best.value;
    std::vector<double> best_x = sample_point(sample_best.index);
    long long evaluations = total;
    auto eval_tracked = [&](const std::vector<double>& x) {
        const double v = objective(x);
        ++evaluations;
        if (v > best_value) {
            best_value = v;
            best_x = x;
        }
        return v;
    };

    // Random sampling alone lands within about a grid spacing of the
    // optimum; the simplex runs close the rest of the gap. Extra starts from
    // the runner-up samples guard against a lucky-but-wrong basin.
    std::vector<double> steps(dim, 0.3);
    nelder_mead(eval_tracked, best_x, steps, cfg.refine_iters, cfg.tol);
    for (int restart = 0; restart < 4; ++restart) {
        SplitMix64 rng(mix_seed(cfg.seed, 0x62667273ULL + static_cast<uint64_t>(restart)));
        std::vector<double> x(dim);
        for (double& v : x) v = rng.uniform(0.0, kTwoPi);
        nelder_mead(eval_tracked, x, steps, cfg.refine_iters, cfg.tol);
    }
    nelder_mead(eval_tracked, best_x, std::vector<double>(dim, 0.02), cfg.refine_iters, cfg.tol);

    BruteForceResult out;
    out.value = best_value;
    const auto [ob, oa] = rotations(best_x);
    out.ob = ob;
    out.oa = two_side ? oa : Rotation3::Identity();
    out.evaluations = evaluations;
    return out;
}

}  // namespace qkdrates
