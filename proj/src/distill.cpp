// Copyright 2026 The ftcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftcap/distill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ftcap/errors.hpp"
#include "ftcap/parallel.hpp"

namespace ftcap {
namespace {

constexpr std::int64_t kMaxPairs = 200000;
constexpr int kDeltaGridPoints = 32;
constexpr double kDeltaMin = 1e-4;

// (amplitude, phase) bits per Bell index, in basis order phi+, psi+, phi-, psi-.
constexpr std::array<std::array<int, 2>, 4> kBellBits{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

}  // namespace

void BellDiagonalState::validate() const {
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw ValidationError("BellDiagonalState: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("BellDiagonalState: probabilities do not sum to 1");
}

std::array<int, 2> bell_error_bits(int index) {
    if (index < 0 || index > 3) throw ArgumentError("bell_error_bits: index outside [0, 3]");
    return kBellBits[index];
}

int bell_index(int amplitude_bit, int phase_bit) {
    for (int i = 0; i < 4; ++i)
        if (kBellBits[i][0] == (amplitude_bit & 1) && kBellBits[i][1] == (phase_bit & 1)) return i;
    return 0;
}

BellDiagonalState phi_q(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("phi_q: q outside [0, 1]");
    return {{1.0 - q, q / 3.0, q / 3.0, q / 3.0}};
}

double state_entropy(const BellDiagonalState& s) {
    s.validate();
    double h = 0.0;
    for (double p : s.probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

YieldFraction yield_fraction(double q) {
    const double h = state_entropy(phi_q(q));
    return {std::max(0.0, 1.0 - h), h >= 1.0};
}

double eps_dist(double q, std::int64_t k, double delta) {
    if (!(q > 0.0 && q < 1.0)) throw ArgumentError("eps_dist: q must lie in (0, 1)");
    if (!(delta > 0.0)) throw ArgumentError("eps_dist: delta must be positive");
    if (k < 1) throw ArgumentError("eps_dist: k must be positive");
    const double l = std::log(q / 3.0);
    const double a = static_cast<double>(k) * delta * delta / (l * l);
    return 2.0 * std::exp(-a) + std::sqrt(2.0 * std::sqrt(3.0) * std::exp(-a / 2.0));
}

DistillRun DistillRun::make(std::int64_t k, double q, double delta, std::uint64_t seed) {
    DistillRun run;
    run.k = k;
    run.q = q;
    run.delta = delta;
    run.seed = seed;
    if (!(q >= 0.0 && q < 0.75)) throw ArgumentError("DistillRun: q outside [0, 3/4)");
    run.m = static_cast<std::int64_t>(std::ceil((state_entropy(phi_q(q)) + delta) * static_cast<double>(k)));
    run.validate();
    return run;
}

void DistillRun::validate() const {
    if (k < 1 || k > kMaxPairs) throw ArgumentError("DistillRun: k outside [1, 2e5]");
    if (!(q >= 0.0 && q < 0.75)) throw ArgumentError("DistillRun: q outside [0, 3/4)");
    if (!(delta > 0.0)) throw ArgumentError("DistillRun: delta must be positive");
    if (m < 0 || m > 2 * k) throw ArgumentError("DistillRun: parity count exceeds 2k");
}

HashingReport hashing_sim(const DistillRun& run, std::int64_t trials, int threads) {
    run.validate();
    if (trials < 1) throw ArgumentError("hashing_sim: trials must be positive");
    const double entropy = state_entropy(phi_q(run.q));
    const double s_ok = run.q < 1.0 ? -std::log2(1.0 - run.q) : 0.0;
    const double s_err = run.q > 0.0 ? -std::log2(run.q / 3.0) : 0.0;
    const double log_keep = std::log1p(-run.q);
    const double k = static_cast<double>(run.k);

    const auto counts = run_chunks<std::int64_t>(trials, run.seed, threads, [&](std::uint64_t seed, std::int64_t,
                                                                                std::int64_t n) {
        std::mt19937_64 rng(seed);
        // Gaps between non-identity pairs are geometric; this samples the
        // error string sparsely. The three error types are equiprobable under
        // phi_q, so the surprisal depends only on how many pairs are hit.
        auto gap = [&]() -> std::int64_t {
            if (run.q <= 0.0) return run.k;
            const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
            const double g = std::floor(std::log(u) / log_keep);
            return g >= k ? run.k : static_cast<std::int64_t>(g);
        };
        std::int64_t atypical = 0;
        for (std::int64_t t = 0; t < n; ++t) {
            std::int64_t hits = 0;
            for (std::int64_t pos = gap(); pos < run.k; pos += 1 + gap()) ++hits;
            const double hd = static_cast<double>(hits);
            const double surprisal = ((k - hd) * s_ok + hd * s_err) / k;
            if (std::abs(surprisal - entropy) > run.delta) ++atypical;
        }
        return atypical;
    });

    HashingReport r;
    r.trials = trials;
    r.atypical = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    r.p_atypical = static_cast<double>(r.atypical) / static_cast<double>(trials);
    r.stderr_ = std::sqrt(r.p_atypical * (1.0 - r.p_atypical) / static_cast<double>(trials));
    r.p_collision_bound = std::exp2(-k * run.delta);
    r.empirical_failure = r.p_atypical;
    r.few_trials = trials < 100;
    return r;
}

std::vector<double> delta_grid(double q) {
    const double hi = std::max(2.0 - state_entropy(phi_q(q)), 2.0 * kDeltaMin);
    std::vector<double> grid;
    for (int i = 0; i < kDeltaGridPoints; ++i)
        grid.push_back(kDeltaMin * std::pow(hi / kDeltaMin, static_cast<double>(i) / (kDeltaGridPoints - 1)));
    return grid;
}

double delta_argmin(double q, std::int64_t k) {
    if (q == 0.0) return kDeltaMin;
    double best = std::numeric_limits<double>::infinity(), arg = kDeltaMin;
    for (double d : delta_grid(q)) {
        const double v = eps_dist(q, k, d);
        if (v < best) {
            best = v;
            arg = d;
        }
    }
    return arg;
}

DistillErrorReport ft_distill_error(double p, std::int64_t k, const BoundParams& params) {
    if (!(p >= 0.0)) throw ArgumentError("ft_distill_error: p must be nonnegative");
    if (p > params.p0 / 2.0) throw DomainError("ft_distill_error: p exceeds p0/2");
    if (k < 1) throw ArgumentError("ft_distill_error: k must be positive");
    DistillErrorReport r;
    r.q = 4.0 * params.c * p;
    if (!(r.q < 1.0)) throw DomainError("ft_distill_error: 4cp must be below 1");
    r.scaling_term = threshold_scaling(p, params.p0, params.l, params.loc_dist);
    r.finite_term = 2.0 / static_cast<double>(k);
    r.delta = delta_argmin(r.q, k);
    // Perfect pairs (q = 0): the hashing step succeeds with certainty.
    r.distill_term = r.q == 0.0 ? 0.0 : std::sqrt(eps_dist(r.q, k, r.delta));
    r.value = r.scaling_term + r.distill_term + r.finite_term;
    return r;
}

BellDiagonalState effective_pair_state(double p, double c) {
    const double q = 4.0 * c * p;
    if (!(p >= 0.0)) throw ArgumentError("effective_pair_state: p must be nonnegative");
    if (q > 0.75) throw DomainError("effective_pair_state: 4cp exceeds 3/4");
    return phi_q(q);
}

double superdense_fidelity(const BellDiagonalState& s) {
    s.validate();
    return s.probs[0];
}

}  // namespace ftcap
