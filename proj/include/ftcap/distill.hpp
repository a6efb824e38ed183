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

// One-way hashing distillation of Bell-diagonal pairs.
//
// Bell basis order is (phi+, psi+, phi-, psi-), identified with the error
// bit pairs (amplitude, phase) = 00, 10, 01, 11, i.e. Pauli I, X, Z, Y acting
// on one half of phi+.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ftcap/bounds.hpp"

namespace ftcap {

struct BellDiagonalState {
    std::array<double, 4> probs{1.0, 0.0, 0.0, 0.0};  ///< p_I, p_X, p_Z, p_Y

    void validate() const;
};

/// Error bits (amplitude, phase) of Bell index i.
std::array<int, 2> bell_error_bits(int index);
int bell_index(int amplitude_bit, int phase_bit);

BellDiagonalState phi_q(double q);
double state_entropy(const BellDiagonalState& s);

struct YieldFraction {
    double value = 0.0;
    bool vacuous = false;  ///< H(phi_q) >= 1: no positive yield
};

YieldFraction yield_fraction(double q);

/// 2 e^{-k d^2 / ln^2(q/3)} + sqrt(2 sqrt(3) e^{-k d^2 / (2 ln^2(q/3))}).
double eps_dist(double q, std::int64_t k, double delta);

struct DistillRun {
    std::int64_t k = 0;
    double q = 0.0;
    double delta = 0.0;
    std::int64_t m = 0;  ///< parity checks, ceil((H(phi_q) + delta) k)
    std::uint64_t seed = 0;

    static DistillRun make(std::int64_t k, double q, double delta, std::uint64_t seed);
    void validate() const;
};

struct HashingReport {
    double p_atypical = 0.0;
    double stderr_ = 0.0;
    double p_collision_bound = 0.0;  ///< 2^{-k delta}
    double empirical_failure = 0.0;
    std::int64_t atypical = 0;
    std::int64_t trials = 0;
    bool few_trials = false;  ///< fewer than 100 trials: stderr unreliable
};

/// Samples error strings of k pairs from phi_q and counts those whose
/// per-pair surprisal leaves [H - delta, H + delta].
HashingReport hashing_sim(const DistillRun& run, std::int64_t trials, int threads = 1);

struct DistillErrorReport {
    double value = 0.0;
    double delta = 0.0;        ///< chosen typicality width
    double q = 0.0;            ///< 4cp
    double scaling_term = 0.0; ///< p0 (p/p0)^{2^l} |Loc|
    double distill_term = 0.0; ///< sqrt(eps_dist(4cp, k, delta))
    double finite_term = 0.0;  ///< 2/k
};

/// delta is the minimiser over a 32-point log grid on [1e-4, 2 - H(phi_q)].
/// Uses params.p0, params.c, params.l and params.loc_dist.
DistillErrorReport ft_distill_error(double p, std::int64_t k, const BoundParams& params);
std::vector<double> delta_grid(double q);
/// Grid point minimising eps_dist(q, k, .); the smallest grid value at q = 0.
double delta_argmin(double q, std::int64_t k);

BellDiagonalState effective_pair_state(double p, double c);

/// Probability that superdense coding over the pair delivers both bits.
double superdense_fidelity(const BellDiagonalState& s);

}  // namespace ftcap
