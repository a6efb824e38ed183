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

// Entanglement-assisted capacity C_ea(T) = max_rho I(A':B) and a Holevo
// lower bound on the classical capacity.
//
// The entanglement-assisted objective is concave in the reduced input rho_A,
// so both are solved as ascent problems over density matrices: projected
// gradient ascent with Armijo backtracking for C_ea, alternating
// Blahut-Arimoto / state-gradient steps for the Holevo quantity.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ftcap/quantum.hpp"

namespace ftcap {

struct CapacityResult {
    double value = 0.0;            ///< bits per channel use
    DensityMatrix optimal_input;   ///< rho_A (average input state for the Holevo bound)
    int iterations = 0;
    bool converged = false;
    double gradient_norm = 0.0;    ///< projected-gradient norm at the returned point
    std::uint64_t seed = 0;        ///< start that produced the result (0 = maximally mixed start)
};

struct AscentOptions {
    double tol = 1e-9;
    int max_iter = 5000;
    std::uint64_t seed = 1;
    int restarts = 5;              ///< random restarts used when the first run does not converge
    double armijo = 1e-4;
    double shrink = 0.5;
};

/// I(A':B) of (T ⊗ id)(phi_rho) computed as H(rho) + H(T(rho)) - H(T^c(rho)).
double ea_objective(const DensityMatrix& rho_a, const QuantumChannel& channel);
double ea_objective(const Matrix& rho_a, const QuantumChannel& channel);

/// Hermitian gradient of ea_objective with respect to rho_A, projected onto
/// trace-zero matrices. Requires rho_A full rank for exactness.
Matrix ea_gradient(const Matrix& rho_a, const QuantumChannel& channel);

CapacityResult ea_capacity(const QuantumChannel& channel, const AscentOptions& options = {});
CapacityResult ea_capacity(const QuantumChannel& channel, double tol, int max_iter);

/// Holevo quantity of an ensemble {p_i, T(psi_i)}.
double holevo_quantity(const QuantumChannel& channel, const std::vector<double>& probs,
                       const std::vector<Vector>& states);

/// Maximises chi over ensembles of ensemble_size pure inputs; the value is a
/// valid lower bound on the classical capacity. ensemble_size <= 0 selects d_in^2.
CapacityResult classical_capacity_lb(const QuantumChannel& channel, int ensemble_size = 0,
                                     double tol = 1e-9, std::uint64_t seed = 1, int max_iter = 20000);

/// Euclidean projection of a Hermitian matrix onto the unit-trace PSD set.
Matrix project_to_density(const Matrix& hermitian);

using Objective = std::function<double(const Matrix&)>;
using Gradient = std::function<Matrix(const Matrix&)>;

/// Worst |<grad, D> - (f(rho + hD) - f(rho - hD)) / 2h| over `directions`
/// random trace-zero Hermitian unit directions D.
/// Throws PreconditionError unless min eig(rho) > 10 h.
double gradient_check(const Objective& objective, const Gradient& gradient, const DensityMatrix& rho,
                      double h, std::uint64_t seed, int directions = 20);
double gradient_check(const QuantumChannel& channel, const DensityMatrix& rho, double h,
                      std::uint64_t seed, int directions = 20);

}  // namespace ftcap
