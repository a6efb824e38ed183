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

#include "ftcap/channels.hpp"

#include <charconv>
#include <cmath>

#include "ftcap/errors.hpp"

namespace ftcap {
namespace {

void check_probability(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError(std::string(what) + ": parameter must lie in [0, 1]");
}

double parse_double(std::string_view text, std::string_view spec) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ArgumentError("builtin channel: cannot parse parameter in '" + std::string(spec) + "'");
    }
    return value;
}

}  // namespace

QuantumChannel depolarizing(double lambda, int d) {
    check_probability(lambda, "depolarizing");
    // Generalised Pauli (Weyl) operators give a Kraus form for any d.
    const double pi = std::acos(-1.0);
    std::vector<Matrix> ops;
    const double w0 = std::sqrt(1.0 - lambda + lambda / (d * d));
    const double w = std::sqrt(lambda) / d;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            Matrix op = Matrix::Zero(d, d);
            for (int k = 0; k < d; ++k) {
                op((k + a) % d, k) = std::polar(1.0, 2.0 * pi * b * k / d);
            }
            ops.push_back((a == 0 && b == 0 ? w0 : w) * op);
        }
    }
    return QuantumChannel(d, d, std::move(ops));
}

QuantumChannel fully_depolarizing(int d) { return depolarizing(1.0, d); }

QuantumChannel dephasing(double lambda) {
    check_probability(lambda, "dephasing");
    Matrix z = Matrix::Identity(2, 2);
    z(1, 1) = -1.0;
    return QuantumChannel(2, 2, {std::sqrt(1.0 - lambda) * Matrix::Identity(2, 2), std::sqrt(lambda) * z});
}

QuantumChannel erasure(double eps) {
    check_probability(eps, "erasure");
    Matrix keep = Matrix::Zero(4, 2);
    keep(0, 0) = keep(1, 1) = std::sqrt(1.0 - eps);
    Matrix lose0 = Matrix::Zero(4, 2);
    Matrix lose1 = Matrix::Zero(4, 2);
    lose0(2, 0) = lose1(2, 1) = std::sqrt(eps);
    return QuantumChannel(2, 4, {keep, lose0, lose1});
}

QuantumChannel unitary_channel(const Matrix& u) {
    if (u.rows() != u.cols()) throw ArgumentError("unitary_channel: matrix not square");
    const int d = static_cast<int>(u.rows());
    return QuantumChannel(d, d, {u}, 1e-9);
}

QuantumChannel replacement(int dim_in, const Matrix& sigma) {
    const int dout = static_cast<int>(sigma.rows());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (sigma + sigma.adjoint()));
    std::vector<Matrix> ops;
    for (int k = 0; k < dout; ++k) {
        const double l = solver.eigenvalues()(k);
        if (l <= 0.0) continue;
        for (int a = 0; a < dim_in; ++a) {
            Matrix op = Matrix::Zero(dout, dim_in);
            op.col(a) = std::sqrt(l) * solver.eigenvectors().col(k);
            ops.push_back(std::move(op));
        }
    }
    return QuantumChannel(dim_in, dout, std::move(ops), 1e-9);
}

QuantumChannel trace_out(int dim_in) {
    std::vector<Matrix> ops;
    for (int a = 0; a < dim_in; ++a) {
        Matrix op = Matrix::Zero(1, dim_in);
        op(0, a) = 1.0;
        ops.push_back(std::move(op));
    }
    return QuantumChannel(dim_in, 1, std::move(ops));
}

QuantumChannel convex_combination(std::span<const QuantumChannel> channels, std::span<const double> weights) {
    if (channels.empty() || channels.size() != weights.size()) {
        throw ArgumentError("convex_combination: need one weight per channel");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ArgumentError("convex_combination: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("convex_combination: weights must sum to 1");
    const int din = channels.front().dim_in();
    const int dout = channels.front().dim_out();
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (channels[i].dim_in() != din || channels[i].dim_out() != dout) {
            throw ArgumentError("convex_combination: channel dimensions differ");
        }
        if (weights[i] == 0.0) continue;
        for (const auto& k : channels[i].kraus()) ops.push_back(std::sqrt(weights[i]) * k);
    }
    return QuantumChannel(din, dout, std::move(ops), 1e-9);
}

QuantumChannel builtin_channel(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    const bool has_arg = colon != std::string_view::npos;
    const std::string_view arg = has_arg ? spec.substr(colon + 1) : std::string_view{};
    if (name == "identity") {
        const int d = has_arg ? static_cast<int>(parse_double(arg, spec)) : 2;
        return QuantumChannel::identity(d);
    }
    if (name == "fully-depolarizing") return fully_depolarizing(2);
    if (!has_arg) throw ArgumentError("builtin channel '" + std::string(spec) + "' needs a parameter");
    const double x = parse_double(arg, spec);
    if (name == "depolarizing") return depolarizing(x);
    if (name == "dephasing") return dephasing(x);
    if (name == "erasure") return erasure(x);
    throw ArgumentError("unknown builtin channel '" + std::string(spec) + "'");
}

// ---------------------------------------------------------------------------

Matrix ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    }
    return g;
}

Matrix random_unitary(int d, Rng& rng) {
    Eigen::HouseholderQR<Matrix> qr(ginibre(d, d, rng));
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const Complex diag = r(i, i);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(i) *= diag / mag;
    }
    return q;
}

PureState random_pure_state(int d, Rng& rng) {
    Vector v = ginibre(d, 1, rng).col(0);
    return PureState(v / v.norm());
}

DensityMatrix random_density_matrix(int d, Rng& rng, int rank) {
    if (rank <= 0) rank = d;
    Matrix g = ginibre(d, rank, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

QuantumChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng) {
    // Isometry V: C^din -> C^(dout * n), Kraus K_k = rows [k*dout, (k+1)*dout).
    const int big = dim_out * kraus_count;
    if (big < dim_in) throw ArgumentError("random_channel: not enough Kraus operators for an isometry");
    Eigen::HouseholderQR<Matrix> qr(ginibre(big, dim_in, rng));
    Matrix v = qr.householderQ() * Matrix::Identity(big, dim_in);
    std::vector<Matrix> ops;
    for (int k = 0; k < kraus_count; ++k) ops.push_back(v.block(k * dim_out, 0, dim_out, dim_in));
    return QuantumChannel(dim_in, dim_out, std::move(ops));
}

Matrix random_traceless_hermitian(int d, Rng& rng) {
    Matrix g = ginibre(d, d, rng);
    Matrix h = 0.5 * (g + g.adjoint());
    h -= (h.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
    return h / h.norm();
}

}  // namespace ftcap
