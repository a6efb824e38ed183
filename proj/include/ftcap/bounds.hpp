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

// Closed-form penalty and error terms for entanglement-assisted coding under
// arbitrarily varying perturbations and under i.i.d. Pauli gate faults.
//
// All logarithms are base 2. Terms of the form p log p are defined at p = 0
// by their limit. Where a binary-entropy argument leaves [0, 1/2] the term is
// evaluated on the monotone envelope h(min(x, 1/2)) and the result carries a
// `saturated` flag; such values are still valid (h <= 1) but the bound is
// then loose.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftcap/quantum.hpp"

namespace ftcap {

struct BoundParams {
    double p = 0.0;
    double p0 = 1e-2;       ///< code threshold
    double c = 10.0;        ///< interface constant
    int l = 1;              ///< concatenation level
    int j1 = 1;             ///< channel input qubits
    int j2 = 1;             ///< channel output qubits
    std::int64_t loc_enc = 0;
    std::int64_t loc_dec = 0;
    std::int64_t loc_dist = 0;
};

enum class F1Variant { theorem, proof };

double binary_entropy(double x);
/// h(min(x, 1/2)) for x >= 0: the smallest nondecreasing majorant of h on [0, inf).
double entropy_envelope(double x);

struct Evaluation {
    double value = 0.0;
    bool saturated = false;   ///< some binary-entropy argument exceeded 1/2
    std::vector<double> terms;
};

/// 2(dA dB log(dA dB) + 1) delta + 2 h(dA dB delta).
Evaluation eta(double delta, int d_a, int d_b);

/// 12 exp(-n delta^2 / (2 log2^2 lambda_min)) + 8 * 2^{-n(I - eta - dA dB log2(n+1)/n - R')}.
double eps_ea(std::int64_t n, double delta, double lambda_min, double mutual_info, double rate, int d_a, int d_b);

/// Penalty f(p) of the AVP coding theorem with lambda_min >= p^2/(dA dB).
Evaluation f_avp(double p, int d_a, int d_b);

/// 4 p log2 dB + 2 (1 + 2p) h(2p / (1 + 2p)).
double mi_continuity_bound(double p, int d_b);

/// (1 - p)(T ⊗ Tr_S) + p N; input ordering (data, syndrome).
QuantumChannel effective_channel(const QuantumChannel& t, double p, const QuantumChannel& n, int syndrome_dim);

/// (1 - p) T + p (1/dB) Tr.
QuantumChannel perturbed_channel(const QuantumChannel& t, double p);

struct PostselectReport {
    double negative_part = 0.0;  ///< sum of negative eigenvalues of Choi(Delta)
    double bound = 0.0;          ///< -exp(-n dt^2 / (3p)) dA^n - 1e-8
    double scale = 0.0;          ///< dB^{n(p + dt)}
    bool holds = false;
};

/// Checks T_{p,N}^{⊗n}(· ⊗ sigma_S) <= dB^{n(p + dt)} T_p^{⊗n} + e^{-n dt^2/(3p)} S
/// through the negative part of the Choi matrix of the difference. sigma_S
/// lives on the n syndrome systems (dimension syndrome_dim^n).
PostselectReport postselect_check(const QuantumChannel& t, double p, const QuantumChannel& n_channel,
                                  const DensityMatrix& sigma_s, int n, double delta_tilde);

/// Random (T, N, sigma_S) draws for postselect_check with qubit data and a
/// qubit syndrome per use: T qubit channel, N on (data, syndrome), sigma_S of
/// random rank on the n syndrome systems. Kraus ranks are random too.
std::vector<PostselectReport> postselect_random_draws(int n, double p, double delta_tilde, int draws,
                                                      std::uint64_t seed);

/// Root q* of h(q) + q log2 3 = 1 on (0, 3/4); the hashing yield is positive below it.
double hashing_root();

/// h(4cp) + 4cp log2 3, the entropy of the twirled pair state.
double distill_entropy(double p, double c);

double f1(double p, const BoundParams& params, F1Variant variant = F1Variant::theorem);
Evaluation f2(double p, const BoundParams& params);
/// f_avp evaluated at perturbation 2(j1 + j2) c p with dA = 2^j1, dB = 2^j2.
Evaluation f2_substituted(double p, const BoundParams& params);

double alpha(double p, double c, double classical_capacity);
double r_ea_required(double p, double c);

/// min(p0/2, 1/(2c(j1+j2))) further restricted so that 4cp stays below the hashing root.
double domain_cap(const BoundParams& params);

double ft_penalty(double p, const BoundParams& params, double cea, double classical_capacity,
                  F1Variant variant = F1Variant::theorem);
double ft_ea_capacity_lb(const BoundParams& params, double cea, double classical_capacity,
                         F1Variant variant = F1Variant::theorem);

struct ThresholdResult {
    double p_th = 0.0;
    double cap = 0.0;
    bool capped = false;         ///< penalty stays below epsilon on the whole domain
    bool vacuous = false;        ///< epsilon >= cea
    bool monotone = true;        ///< sampled penalty nondecreasing on [0, cap]
    int evaluations = 0;
};

ThresholdResult threshold_find(double epsilon, const BoundParams& params, double cea, double classical_capacity,
                               F1Variant variant = F1Variant::theorem);

/// p0 (p/p0)^{2^l} loc.
double threshold_scaling(double p, double p0, int l, std::int64_t loc);

/// Smallest l >= 1 with (p/p0)^{2^{l-1}} loc_total <= 1/n.
int level_choice(std::int64_t n, double p, double p0, std::int64_t loc_total);

struct ResourceReport {
    double qq_rate = 0.0;   ///< ebits consumed per channel use
    double cc_rate = 0.0;   ///< classical bits per channel use
    double input_entropy = 0.0;
    double mutual_info = 0.0;
};

ResourceReport resource_report(const BoundParams& params, double input_entropy, double cea,
                               double classical_capacity, F1Variant variant = F1Variant::theorem);

std::string to_string(F1Variant variant);
F1Variant parse_f1_variant(const std::string& name);

}  // namespace ftcap
