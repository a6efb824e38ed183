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

#include "ftcap/pauli.hpp"

#include "ftcap/errors.hpp"

namespace ftcap {
namespace {

std::uint64_t mask(int n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

PauliString::PauliString(int n, std::uint64_t x, std::uint64_t z, int phase) : n_(n), x_(x), z_(z), phase_(phase & 3) {
    if (n < 1 || n > kMaxPauliQubits) throw ArgumentError("PauliString: qubit count outside [1, 64]");
    if ((x | z) & ~mask(n)) throw ArgumentError("PauliString: support outside register");
}

PauliString PauliString::single(int n, int q, char label) {
    if (q < 0 || q >= n) throw ArgumentError("PauliString::single: qubit out of range");
    const std::uint64_t b = std::uint64_t{1} << q;
    switch (label) {
        case 'I': return PauliString(n);
        case 'X': return PauliString(n, b, 0);
        case 'Z': return PauliString(n, 0, b);
        case 'Y': return PauliString(n, b, b, 1);
        default: throw ArgumentError(std::string("PauliString::single: bad label ") + label);
    }
}

PauliString PauliString::parse(std::string_view text) {
    int k = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') k += 2;
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        k += 1;
        text.remove_prefix(1);
    }
    const int n = static_cast<int>(text.size());
    if (n < 1 || n > kMaxPauliQubits) throw ArgumentError("PauliString::parse: length outside [1, 64]");
    PauliString out(n, 0, 0, k);
    for (int q = 0; q < n; ++q) out = out * single(n, q, text[q]);
    out.phase_ = (out.phase_ + 0) & 3;
    return out;
}

int PauliString::phase() const { return (phase_ - std::popcount(x_ & z_)) & 3; }

char PauliString::label(int q) const {
    const bool xb = (x_ >> q) & 1, zb = (z_ >> q) & 1;
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

PauliString PauliString::operator*(const PauliString& other) const {
    if (n_ != other.n_) throw ArgumentError("PauliString: size mismatch in product");
    // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
    const int sign = 2 * (std::popcount(z_ & other.x_) & 1);
    PauliString out;
    out.n_ = n_;
    out.x_ = x_ ^ other.x_;
    out.z_ = z_ ^ other.z_;
    out.phase_ = (phase_ + other.phase_ + sign) & 3;
    return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (n_ != other.n_) throw ArgumentError("PauliString: size mismatch in commutator");
    return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

std::string PauliString::to_string() const {
    static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
    std::string s = kPrefix[phase()];
    for (int q = 0; q < n_; ++q) s += label(q);
    return s;
}

Matrix PauliString::to_matrix() const {
    if (n_ > 12) throw ArgumentError("PauliString::to_matrix: more than 12 qubits");
    Matrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    Matrix out = Matrix::Identity(1, 1);
    for (int q = 0; q < n_; ++q) {
        Matrix f = Matrix::Identity(2, 2);
        if ((x_ >> q) & 1) f = f * x;
        if ((z_ >> q) & 1) f = f * z;
        out = kron(out, f);
    }
    static const Complex kI[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kI[phase_] * out;
}

}  // namespace ftcap
