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

// Exact finite-dimensional quantum objects: states, channels in Kraus form,
// entropies and distances. All entropic quantities are in bits.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ftcap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance for the Hermiticity, trace and positivity invariants of states.
inline constexpr double kStateTolerance = 1e-10;
/// Completeness tolerance for channels constructed in code.
inline constexpr double kChannelTolerance = 1e-10;
/// Eigenvalues at or below this are treated as exact zeros in entropies.
inline constexpr double kEntropyCutoff = 1e-12;
/// Largest Hilbert-space dimension handled by the dense routines.
inline constexpr int kMaxDim = 4096;

Matrix kron(const Matrix& a, const Matrix& b);

/// Eigenvalues of (m + m†)/2 in ascending order.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

/// log2 of a PSD matrix restricted to its support; eigenvalues <= cutoff map to 0.
Matrix log2_on_support(const Matrix& psd, double cutoff = kEntropyCutoff);

/// Square root of a PSD matrix (negative eigenvalues clipped to zero).
Matrix psd_sqrt(const Matrix& psd);

/// -sum lambda log2 lambda over eigenvalues above kEntropyCutoff.
double entropy_bits(const Matrix& psd);

class PureState {
public:
    explicit PureState(Vector amplitudes);

    /// (1/sqrt d) sum_i |i>|i>.
    static PureState maximally_entangled(int d);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }

private:
    Vector amplitudes_;
};

class DensityMatrix {
public:
    /// Validates Hermiticity, unit trace and positivity within kStateTolerance.
    /// An empty factor list means a single factor of full dimension.
    explicit DensityMatrix(Matrix rho, std::vector<int> factors = {});

    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix from_pure(const PureState& psi, std::vector<int> factors = {});

    int dim() const { return static_cast<int>(rho_.rows()); }
    const Matrix& matrix() const { return rho_; }
    const std::vector<int>& factors() const { return factors_; }
    int factor_count() const { return static_cast<int>(factors_.size()); }

    /// Same matrix, different factorisation (product must equal dim).
    DensityMatrix with_factors(std::vector<int> factors) const;

private:
    Matrix rho_;
    std::vector<int> factors_;
};

/// Completely positive trace-preserving map stored as Kraus operators.
class QuantumChannel {
public:
    QuantumChannel(int dim_in, int dim_out, std::vector<Matrix> kraus,
                   double tolerance = kChannelTolerance);

    static QuantumChannel identity(int d);

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    int kraus_count() const { return static_cast<int>(kraus_.size()); }

    /// sum_k K X K† for an arbitrary (not necessarily Hermitian) operator X.
    Matrix apply(const Matrix& x) const;
    /// Heisenberg picture: sum_k K† Y K.
    Matrix adjoint(const Matrix& y) const;
    /// Environment output of the Stinespring dilation: [W(X)]_{ij} = Tr(K_i X K_j†).
    Matrix complementary(const Matrix& x) const;
    /// Adjoint of complementary(): sum_ij Y_ji K_j† K_i.
    Matrix complementary_adjoint(const Matrix& y) const;

    /// The composition this ∘ first.
    QuantumChannel after(const QuantumChannel& first) const;

    /// max |sum K†K - I| entrywise.
    double completeness_error() const;

private:
    int dim_in_;
    int dim_out_;
    std::vector<Matrix> kraus_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

/// Reorders tensor factors: factor i of the result is factor perm[i] of m.
Matrix permute_factors(const Matrix& m, std::span<const int> dims, std::span<const int> perm);

/// Partial trace of an operator with the given factor dimensions; keeps the
/// listed factors in ascending order.
Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Applies the channel to one tensor factor; that factor's dimension becomes dim_out.
DensityMatrix apply_channel(const QuantumChannel& channel, const DensityMatrix& rho, int on);
Matrix apply_channel(const QuantumChannel& channel, const Matrix& m, std::span<const int> dims, int on);

double von_neumann_entropy(const DensityMatrix& rho);

/// H(A) + H(B) - H(AB) where A is the set of factors in part_a and B the rest.
double mutual_information(const DensityMatrix& rho, std::span<const int> part_a);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Half the trace norm of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_norm(const Matrix& hermitian);

/// (T ⊗ id)(sum_ij |i><j| ⊗ |i><j|); output factor first. Trace equals dim_in.
Matrix choi_matrix(const QuantumChannel& channel);

/// (T ⊗ id)(phi_rho) for the canonical purification phi_rho = (sqrt(rho) ⊗ 1)|Gamma>,
/// factors (output, reference).
DensityMatrix purified_output(const QuantumChannel& channel, const DensityMatrix& rho_a);

}  // namespace ftcap
