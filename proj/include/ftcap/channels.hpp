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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "ftcap/quantum.hpp"

namespace ftcap {

using Rng = std::mt19937_64;

// Standard channel families ------------------------------------------------

/// rho -> (1 - lambda) rho + lambda Tr(rho) 1/d.
QuantumChannel depolarizing(double lambda, int d = 2);
/// depolarizing(1).
QuantumChannel fully_depolarizing(int d = 2);
/// Qubit phase flip with probability lambda.
QuantumChannel dephasing(double lambda);
/// Qubit erasure with probability eps; the erasure flag |2> lives in a
/// two-qubit output register (dim_out = 4).
QuantumChannel erasure(double eps);
QuantumChannel unitary_channel(const Matrix& u);
/// rho -> Tr(rho) sigma.
QuantumChannel replacement(int dim_in, const Matrix& sigma);
/// Discards the input: dim_in -> 1.
QuantumChannel trace_out(int dim_in);
/// Kraus union of sqrt(w_i) K for a probability vector w.
QuantumChannel convex_combination(std::span<const QuantumChannel> channels, std::span<const double> weights);

/// Builtin channel by name: "identity", "identity:d", "depolarizing:L",
/// "fully-depolarizing", "dephasing:L", "erasure:E". Throws ArgumentError.
QuantumChannel builtin_channel(std::string_view spec);

// Random objects (seeded, reproducible) -----------------------------------

Matrix ginibre(int rows, int cols, Rng& rng);
/// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
Matrix random_unitary(int d, Rng& rng);
PureState random_pure_state(int d, Rng& rng);
/// Induced-measure mixed state of the given rank (rank = d gives full rank).
DensityMatrix random_density_matrix(int d, Rng& rng, int rank = -1);
/// Random channel from a Haar isometry into dim_out * kraus_count.
QuantumChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng);
/// Random traceless Hermitian direction with unit Frobenius norm.
Matrix random_traceless_hermitian(int d, Rng& rng);

}  // namespace ftcap
