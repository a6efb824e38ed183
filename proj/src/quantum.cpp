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

#include "ftcap/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "ftcap/errors.hpp"

namespace ftcap {
namespace {

int product(std::span<const int> dims) {
    return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

void check_dim(int d, const char* what) {
    if (d < 1 || d > kMaxDim) {
        throw ArgumentError(std::string(what) + ": dimension " + std::to_string(d) +
                            " outside [1, " + std::to_string(kMaxDim) + "]");
    }
}

// Row-major multi-index digits of a flat index.
void unflatten(int index, std::span<const int> dims, std::span<int> digits) {
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Matrix log2_on_support(const Matrix& psd, double cutoff) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(psd));
    Eigen::VectorXd logs = solver.eigenvalues().unaryExpr(
        [cutoff](double l) { return l > cutoff ? std::log2(l) : 0.0; });
    const Matrix& v = solver.eigenvectors();
    return v * logs.cast<Complex>().asDiagonal() * v.adjoint();
}

Matrix psd_sqrt(const Matrix& psd) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(psd));
    Eigen::VectorXd roots =
        solver.eigenvalues().unaryExpr([](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
    const Matrix& v = solver.eigenvectors();
    return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

double entropy_bits(const Matrix& psd) {
    double h = 0.0;
    for (double l : hermitian_eigenvalues(psd)) {
        if (l > kEntropyCutoff) h -= l * std::log2(l);
    }
    return std::max(h, 0.0);
}

// ---------------------------------------------------------------------------

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    check_dim(static_cast<int>(amplitudes_.size()), "PureState");
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
        throw ArgumentError("PureState: amplitudes must have unit norm");
    }
}

PureState PureState::maximally_entangled(int d) {
    check_dim(d * d, "maximally_entangled");
    Vector v = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix rho, std::vector<int> factors)
    : rho_(std::move(rho)), factors_(std::move(factors)) {
    if (rho_.rows() != rho_.cols()) throw ArgumentError("DensityMatrix: matrix not square");
    check_dim(static_cast<int>(rho_.rows()), "DensityMatrix");
    if (factors_.empty()) factors_ = {static_cast<int>(rho_.rows())};
    if (product(factors_) != rho_.rows()) {
        throw ArgumentError("DensityMatrix: factor dimensions do not multiply to dim");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
        throw ArgumentError("DensityMatrix: not Hermitian");
    }
    rho_ = hermitize(rho_);
    if (std::abs(rho_.trace().real() - 1.0) > kStateTolerance) {
        throw ArgumentError("DensityMatrix: trace is not 1");
    }
    if (hermitian_eigenvalues(rho_).front() < -kStateTolerance) {
        throw ArgumentError("DensityMatrix: not positive semi-definite");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    check_dim(dim, "maximally_mixed");
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi, std::vector<int> factors) {
    const Vector& a = psi.amplitudes();
    return DensityMatrix(a * a.adjoint(), std::move(factors));
}

DensityMatrix DensityMatrix::with_factors(std::vector<int> factors) const {
    return DensityMatrix(rho_, std::move(factors));
}

// ---------------------------------------------------------------------------

QuantumChannel::QuantumChannel(int dim_in, int dim_out, std::vector<Matrix> kraus, double tolerance)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    check_dim(dim_in_, "QuantumChannel input");
    check_dim(dim_out_, "QuantumChannel output");
    if (kraus_.empty()) throw ArgumentError("QuantumChannel: no Kraus operators");
    for (const auto& k : kraus_) {
        if (k.rows() != dim_out_ || k.cols() != dim_in_) {
            throw ArgumentError("QuantumChannel: Kraus operator has shape " +
                                std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                                ", expected " + std::to_string(dim_out_) + "x" +
                                std::to_string(dim_in_));
        }
    }
    const double err = completeness_error();
    if (err > tolerance) {
        throw ArgumentError("QuantumChannel: Kraus operators not trace preserving (deviation " +
                            std::to_string(err) + ")");
    }
}

QuantumChannel QuantumChannel::identity(int d) {
    return QuantumChannel(d, d, {Matrix::Identity(d, d)});
}

Matrix QuantumChannel::apply(const Matrix& x) const {
    if (x.rows() != dim_in_ || x.cols() != dim_in_) {
        throw ArgumentError("QuantumChannel::apply: operator dimension mismatch");
    }
    Matrix out = Matrix::Zero(dim_out_, dim_out_);
    for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
    return out;
}

Matrix QuantumChannel::adjoint(const Matrix& y) const {
    if (y.rows() != dim_out_ || y.cols() != dim_out_) {
        throw ArgumentError("QuantumChannel::adjoint: operator dimension mismatch");
    }
    Matrix out = Matrix::Zero(dim_in_, dim_in_);
    for (const auto& k : kraus_) out.noalias() += k.adjoint() * y * k;
    return out;
}

Matrix QuantumChannel::complementary(const Matrix& x) const {
    const int n = kraus_count();
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) {
        Matrix kx = kraus_[i] * x;
        for (int j = 0; j < n; ++j) out(i, j) = (kx * kraus_[j].adjoint()).trace();
    }
    return out;
}

Matrix QuantumChannel::complementary_adjoint(const Matrix& y) const {
    const int n = kraus_count();
    Matrix out = Matrix::Zero(dim_in_, dim_in_);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (y(j, i) != Complex(0.0)) out.noalias() += y(j, i) * kraus_[j].adjoint() * kraus_[i];
        }
    }
    return out;
}

QuantumChannel QuantumChannel::after(const QuantumChannel& first) const {
    if (first.dim_out() != dim_in_) throw ArgumentError("QuantumChannel::after: dimension mismatch");
    std::vector<Matrix> ops;
    ops.reserve(kraus_.size() * first.kraus().size());
    for (const auto& a : kraus_) {
        for (const auto& b : first.kraus()) ops.push_back(a * b);
    }
    return QuantumChannel(first.dim_in(), dim_out_, std::move(ops), 1e-8);
}

double QuantumChannel::completeness_error() const {
    Matrix sum = Matrix::Zero(dim_in_, dim_in_);
    for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
    return (sum - Matrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<int> factors = a.factors();
    factors.insert(factors.end(), b.factors().begin(), b.factors().end());
    return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(factors));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
    std::vector<Matrix> ops;
    ops.reserve(a.kraus().size() * b.kraus().size());
    for (const auto& ka : a.kraus()) {
        for (const auto& kb : b.kraus()) ops.push_back(kron(ka, kb));
    }
    return QuantumChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(ops), 1e-8);
}

Matrix permute_factors(const Matrix& m, std::span<const int> dims, std::span<const int> perm) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n) throw ArgumentError("permute_factors: bad permutation");
    const int total = product(dims);
    if (m.rows() != total || m.cols() != total) throw ArgumentError("permute_factors: dimension mismatch");
    std::vector<int> new_dims(n);
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (perm[i] < 0 || perm[i] >= n || seen[perm[i]]) throw ArgumentError("permute_factors: bad permutation");
        seen[perm[i]] = true;
        new_dims[i] = dims[perm[i]];
    }
    std::vector<int> map(total);
    std::vector<int> digits(n);
    for (int idx = 0; idx < total; ++idx) {
        unflatten(idx, dims, digits);
        int out = 0;
        for (int i = 0; i < n; ++i) out = out * new_dims[i] + digits[perm[i]];
        map[idx] = out;
    }
    Matrix result(total, total);
    for (int r = 0; r < total; ++r) {
        for (int c = 0; c < total; ++c) result(map[r], map[c]) = m(r, c);
    }
    return result;
}

Matrix partial_trace(const Matrix& m, std::span<const int> dims, std::span<const int> keep) {
    const int n = static_cast<int>(dims.size());
    const int total = product(dims);
    if (m.rows() != total || m.cols() != total) throw ArgumentError("partial_trace: dimension mismatch");
    if (keep.empty()) throw ArgumentError("partial_trace: keep must be nonempty");
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) throw ArgumentError("partial_trace: factor index " + std::to_string(k) + " out of range");
        if (kept[k]) throw ArgumentError("partial_trace: duplicate factor index");
        kept[k] = true;
    }
    // Split every flat index into (kept part, traced part).
    std::vector<int> kept_index(total), traced_index(total);
    std::vector<int> digits(n);
    int kept_dim = 1;
    for (int i = 0; i < n; ++i) {
        if (kept[i]) kept_dim *= dims[i];
    }
    for (int idx = 0; idx < total; ++idx) {
        unflatten(idx, dims, digits);
        int a = 0, b = 0;
        for (int i = 0; i < n; ++i) {
            if (kept[i]) {
                a = a * dims[i] + digits[i];
            } else {
                b = b * dims[i] + digits[i];
            }
        }
        kept_index[idx] = a;
        traced_index[idx] = b;
    }
    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (int r = 0; r < total; ++r) {
        for (int c = 0; c < total; ++c) {
            if (traced_index[r] == traced_index[c]) out(kept_index[r], kept_index[c]) += m(r, c);
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    const auto& dims = rho.factors();
    Matrix reduced = partial_trace(rho.matrix(), dims, keep);
    std::vector<int> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> factors;
    for (int k : sorted) factors.push_back(dims[k]);
    return DensityMatrix(std::move(reduced), std::move(factors));
}

Matrix apply_channel(const QuantumChannel& channel, const Matrix& m, std::span<const int> dims, int on) {
    const int n = static_cast<int>(dims.size());
    if (on < 0 || on >= n) throw ArgumentError("apply_channel: factor index out of range");
    if (dims[on] != channel.dim_in()) {
        throw ArgumentError("apply_channel: factor dimension " + std::to_string(dims[on]) +
                            " does not match channel input " + std::to_string(channel.dim_in()));
    }
    int left = 1, right = 1;
    for (int i = 0; i < on; ++i) left *= dims[i];
    for (int i = on + 1; i < n; ++i) right *= dims[i];
    const Matrix il = Matrix::Identity(left, left);
    const Matrix ir = Matrix::Identity(right, right);
    const int out_dim = left * channel.dim_out() * right;
    Matrix out = Matrix::Zero(out_dim, out_dim);
    for (const auto& k : channel.kraus()) {
        Matrix full = kron(kron(il, k), ir);
        out.noalias() += full * m * full.adjoint();
    }
    return out;
}

DensityMatrix apply_channel(const QuantumChannel& channel, const DensityMatrix& rho, int on) {
    Matrix out = apply_channel(channel, rho.matrix(), rho.factors(), on);
    std::vector<int> factors = rho.factors();
    factors[on] = channel.dim_out();
    return DensityMatrix(hermitize(out), std::move(factors));
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_bits(rho.matrix()); }

double mutual_information(const DensityMatrix& rho, std::span<const int> part_a) {
    const int n = rho.factor_count();
    if (n < 2) throw ArgumentError("mutual_information: state needs at least two factors");
    std::vector<bool> in_a(n, false);
    for (int k : part_a) {
        if (k < 0 || k >= n) throw ArgumentError("mutual_information: factor index out of range");
        in_a[k] = true;
    }
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i) (in_a[i] ? a : b).push_back(i);
    if (a.empty() || b.empty()) throw ArgumentError("mutual_information: cut must be a proper bipartition");
    const auto& dims = rho.factors();
    const double ha = entropy_bits(partial_trace(rho.matrix(), dims, a));
    const double hb = entropy_bits(partial_trace(rho.matrix(), dims, b));
    return ha + hb - entropy_bits(rho.matrix());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw ArgumentError("fidelity: dimension mismatch");
    // ||sqrt(rho) sqrt(sigma)||_1 via singular values; avoids square roots of
    // eigenvalues that are zero up to rounding.
    const Matrix m = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
    Eigen::JacobiSVD<Matrix> svd(m);
    const double tr = svd.singularValues().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

double trace_norm(const Matrix& hermitian) {
    double sum = 0.0;
    for (double l : hermitian_eigenvalues(hermitian)) sum += std::abs(l);
    return sum;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw ArgumentError("trace_distance: dimension mismatch");
    return std::clamp(0.5 * trace_norm(rho.matrix() - sigma.matrix()), 0.0, 1.0);
}

Matrix choi_matrix(const QuantumChannel& channel) {
    const int din = channel.dim_in();
    const int dout = channel.dim_out();
    Matrix choi = Matrix::Zero(dout * din, dout * din);
    Matrix unit = Matrix::Zero(din, din);
    for (int i = 0; i < din; ++i) {
        for (int j = 0; j < din; ++j) {
            unit.setZero();
            unit(i, j) = 1.0;
            const Matrix block = channel.apply(unit);
            // (output a, input i) row, (output b, input j) column
            for (int a = 0; a < dout; ++a) {
                for (int b = 0; b < dout; ++b) choi(a * din + i, b * din + j) = block(a, b);
            }
        }
    }
    return choi;
}

DensityMatrix purified_output(const QuantumChannel& channel, const DensityMatrix& rho_a) {
    const int d = channel.dim_in();
    if (rho_a.dim() != d) throw ArgumentError("purified_output: input dimension mismatch");
    const Matrix s = psd_sqrt(rho_a.matrix());
    Vector psi = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) {
        for (int a = 0; a < d; ++a) psi(a * d + i) = s(a, i);
    }
    const std::vector<int> dims{d, d};
    Matrix out = apply_channel(channel, Matrix(psi * psi.adjoint()), dims, 0);
    out /= out.trace().real();
    return DensityMatrix(hermitize(out), {channel.dim_out(), d});
}

}  // namespace ftcap
