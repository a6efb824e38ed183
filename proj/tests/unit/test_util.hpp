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

// Test-only oracles built directly from their defining formulas, independent
// of the library code paths they are used to check.

#pragma once

#include <cmath>

#include "ftcap/quantum.hpp"

namespace ftcap::testing {

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Vector bell_vector(int index) {
    // phi+, psi+, phi-, psi-
    const double s = 1.0 / std::sqrt(2.0);
    Vector v = Vector::Zero(4);
    switch (index) {
        case 0: v(0) = s; v(3) = s; break;
        case 1: v(1) = s; v(2) = s; break;
        case 2: v(0) = s; v(3) = -s; break;
        default: v(1) = s; v(2) = -s; break;
    }
    return v;
}

inline DensityMatrix phi_plus() {
    Vector v = bell_vector(0);
    return DensityMatrix(v * v.adjoint(), {2, 2});
}

/// (1 - q) phi+ + q/3 (psi+ + phi- + psi-).
inline DensityMatrix bell_diagonal(double q) {
    Matrix rho = Matrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) {
        Vector v = bell_vector(k);
        rho += (k == 0 ? 1.0 - q : q / 3.0) * v * v.adjoint();
    }
    return DensityMatrix(rho, {2, 2});
}

/// (1 - l) phi+ + l 1/4, the output of a qubit depolarizing channel on half of phi+.
inline DensityMatrix isotropic(double l) {
    Vector v = bell_vector(0);
    Matrix rho = (1.0 - l) * v * v.adjoint() + l * Matrix::Identity(4, 4) / 4.0;
    return DensityMatrix(rho, {2, 2});
}

inline double binary_entropy_oracle(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace ftcap::testing
