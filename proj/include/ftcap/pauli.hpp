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

// n-qubit Pauli operators (n <= 64) in symplectic form.
//
// Stored as i^k X^x Z^z, i.e. the X part acts first on the ket side of each
// qubit; Y = i X Z. With this convention multiplication only needs the
// parity of z1 & x2 to update the phase.

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "ftcap/quantum.hpp"

namespace ftcap {

inline constexpr int kMaxPauliQubits = 64;

class PauliString {
public:
    PauliString() = default;
    explicit PauliString(int n, std::uint64_t x = 0, std::uint64_t z = 0, int phase = 0);

    /// Parses e.g. "XIZY", "-iXX", "+YZ". Qubit 0 is the leftmost letter.
    static PauliString parse(std::string_view text);
    /// Single-qubit label ('I', 'X', 'Y', 'Z') on qubit q of an n-qubit register.
    static PauliString single(int n, int q, char label);

    int size() const { return n_; }
    std::uint64_t x() const { return x_; }
    std::uint64_t z() const { return z_; }
    /// Exponent k of i^k in the X^x Z^z form.
    int raw_phase() const { return phase_; }
    /// Exponent of the overall phase of the Hermitian-letter form (i^k for X/Y/Z letters).
    int phase() const;
    int weight() const { return std::popcount(x_ | z_); }
    char label(int q) const;
    bool is_identity() const { return (x_ | z_) == 0; }

    PauliString operator*(const PauliString& other) const;
    bool operator==(const PauliString& other) const = default;

    bool commutes_with(const PauliString& other) const;
    /// Equal up to overall phase.
    bool same_support(const PauliString& other) const { return n_ == other.n_ && x_ == other.x_ && z_ == other.z_; }

    std::string to_string() const;
    /// Dense 2^n x 2^n matrix; qubit 0 is the most significant tensor factor.
    Matrix to_matrix() const;

private:
    int n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
};

}  // namespace ftcap
