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

#include "ftcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ftcap/channels.hpp"
#include "ftcap/errors.hpp"

namespace ftcap {
namespace {

constexpr double kInvLn2 = 1.4426950408889634;
// Floor for log2 of the input state itself: keeps the gradient finite on the
// boundary while still pushing the iterate back inside.
constexpr double kInputLogFloor = 1e-16;
constexpr double kValueNoise = 1e-13;
constexpr int kStallWindow = 200;

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix traceless(const Matrix& m) {
    const auto d = m.rows();
    return m - (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
}

double inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace().real(); }

Matrix floored_log2(const Matrix& psd) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(psd));
    Eigen::VectorXd logs =
        solver.eigenvalues().unaryExpr([](double l) { return std::log2(std::max(l, kInputLogFloor)); });
    const Matrix& v = solver.eigenvectors();
    return v * logs.cast<Complex>().asDiagonal() * v.adjoint();
}

// Projection of a real vector onto the probability simplex (sort-based).
Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
    const auto n = y.size();
    std::vector<double> u(y.data(), y.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        cumulative += u[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) theta = t;
    }
    return (y.array() - theta).max(0.0).matrix();
}

struct AscentRun {
    Matrix rho;
    double value;
    int iterations;
    bool converged;
    double gradient_norm;
};

AscentRun projected_ascent(const QuantumChannel& channel, Matrix rho, const AscentOptions& opt) {
    double f = ea_objective(rho, channel);
    double step = 1.0;
    AscentRun run{rho, f, 0, false, 0.0};
    for (int it = 0; it < opt.max_iter; ++it) {
        const Matrix g = ea_gradient(rho, channel);
        const double gm = (rho - project_to_density(rho + g)).norm();
        run = {rho, f, it, false, gm};
        if (gm < opt.tol) {
            run.converged = true;
            return run;
        }
        double t = std::min(step * 4.0, 1e4);
        bool accepted = false;
        while (t > 1e-18) {
            Matrix candidate = project_to_density(rho + t * g);
            const double fc = ea_objective(candidate, channel);
            const double gain = inner(g, candidate - rho);
            bool ok = fc >= f + opt.armijo * gain;
            // Near the optimum the Armijo gain drops below the rounding noise
            // of f; fall back to the sign of the directional derivative at
            // the candidate, which the gradient still resolves.
            if (!ok && std::abs(fc - f) <= kValueNoise * std::max(1.0, std::abs(f))) {
                ok = inner(ea_gradient(candidate, channel), candidate - rho) > 0.0;
            }
            if (ok) {
                rho = std::move(candidate);
                f = fc;
                step = t;
                accepted = true;
                break;
            }
            t *= opt.shrink;
        }
        if (!accepted) break;  // no ascent direction left at working precision
    }
    const Matrix g = ea_gradient(rho, channel);
    const double gm = (rho - project_to_density(rho + g)).norm();
    return {rho, f, opt.max_iter, gm < opt.tol, gm};
}

}  // namespace

Matrix project_to_density(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(hermitian));
    const Eigen::VectorXd p = project_simplex(solver.eigenvalues());
    const Matrix& v = solver.eigenvectors();
    return hermitize(v * p.cast<Complex>().asDiagonal() * v.adjoint());
}

double ea_objective(const Matrix& rho_a, const QuantumChannel& channel) {
    if (rho_a.rows() != channel.dim_in()) throw ArgumentError("ea_objective: input dimension mismatch");
    return entropy_bits(rho_a) + entropy_bits(channel.apply(rho_a)) - entropy_bits(channel.complementary(rho_a));
}

double ea_objective(const DensityMatrix& rho_a, const QuantumChannel& channel) {
    return ea_objective(rho_a.matrix(), channel);
}

Matrix ea_gradient(const Matrix& rho_a, const QuantumChannel& channel) {
    if (rho_a.rows() != channel.dim_in()) throw ArgumentError("ea_gradient: input dimension mismatch");
    const Matrix out = channel.apply(rho_a);
    const Matrix env = channel.complementary(rho_a);
    Matrix g = -floored_log2(rho_a) - channel.adjoint(log2_on_support(out)) +
               channel.complementary_adjoint(log2_on_support(env));
    g -= kInvLn2 * Matrix::Identity(rho_a.rows(), rho_a.cols());
    return traceless(hermitize(g));
}

CapacityResult ea_capacity(const QuantumChannel& channel, const AscentOptions& options) {
    if (!(options.tol > 0.0)) throw ArgumentError("ea_capacity: tol must be positive");
    const int d = channel.dim_in();
    AscentRun best = projected_ascent(channel, Matrix::Identity(d, d) / static_cast<double>(d), options);
    std::uint64_t best_seed = 0;
    if (!best.converged) {
        for (int r = 0; r < options.restarts; ++r) {
            const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(r);
            Rng rng(seed);
            AscentRun run = projected_ascent(channel, random_density_matrix(d, rng).matrix(), options);
            // Larger value wins; ties keep the earlier (lower) seed.
            if (run.value > best.value) {
                best = std::move(run);
                best_seed = seed;
            }
        }
    }
    return CapacityResult{
        .value = best.value,
        .optimal_input = DensityMatrix(best.rho),
        .iterations = best.iterations,
        .converged = best.converged,
        .gradient_norm = best.gradient_norm,
        .seed = best_seed,
    };
}

CapacityResult ea_capacity(const QuantumChannel& channel, double tol, int max_iter) {
    AscentOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    return ea_capacity(channel, options);
}

// ---------------------------------------------------------------------------

double holevo_quantity(const QuantumChannel& channel, const std::vector<double>& probs,
                       const std::vector<Vector>& states) {
    const int dout = channel.dim_out();
    Matrix average = Matrix::Zero(dout, dout);
    double conditional = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        const Matrix out = channel.apply(states[i] * states[i].adjoint());
        average += probs[i] * out;
        conditional += probs[i] * entropy_bits(out);
    }
    return entropy_bits(average) - conditional;
}

namespace {

struct Ensemble {
    std::vector<double> probs;
    std::vector<Vector> states;
    double chi = 0.0;
    double gap = 0.0;
    int iterations = 0;
    bool converged = false;
};

Ensemble holevo_ascent(const QuantumChannel& channel, int size, double tol, Rng& rng, int max_iter) {
    const int din = channel.dim_in();
    Ensemble e;
    e.probs.assign(size, 1.0 / size);
    for (int i = 0; i < size; ++i) e.states.push_back(random_pure_state(din, rng).amplitudes());
    e.chi = holevo_quantity(channel, e.probs, e.states);

    std::vector<Matrix> outputs(size);
    std::vector<double> steps(size, 1.0);
    double checkpoint = e.chi;
    for (int it = 0; it < max_iter; ++it) {
        e.iterations = it + 1;
        // Probability update (Blahut-Arimoto for the fixed input states).
        Matrix average = Matrix::Zero(channel.dim_out(), channel.dim_out());
        for (int i = 0; i < size; ++i) {
            outputs[i] = channel.apply(e.states[i] * e.states[i].adjoint());
            average += e.probs[i] * outputs[i];
        }
        const Matrix log_avg = log2_on_support(average);
        std::vector<double> divergence(size);
        double max_div = -1e300;
        for (int i = 0; i < size; ++i) {
            divergence[i] = -entropy_bits(outputs[i]) - inner(outputs[i], log_avg);
            max_div = std::max(max_div, divergence[i]);
        }
        double z = 0.0;
        for (int i = 0; i < size; ++i) {
            e.probs[i] *= std::exp2(divergence[i] - max_div);
            z += e.probs[i];
        }
        for (double& p : e.probs) p /= z;

        // State update: backtracking ascent on each pure state.
        double grad_norm = 0.0;
        for (int i = 0; i < size; ++i) {
            if (e.probs[i] < 1e-14) continue;
            const double chi0 = holevo_quantity(channel, e.probs, e.states);
            Matrix avg = Matrix::Zero(channel.dim_out(), channel.dim_out());
            for (int j = 0; j < size; ++j) {
                avg += e.probs[j] * channel.apply(e.states[j] * e.states[j].adjoint());
            }
            const Matrix out_i = channel.apply(e.states[i] * e.states[i].adjoint());
            const Matrix m = e.probs[i] * channel.adjoint(log2_on_support(out_i) - log2_on_support(avg));
            const Vector& psi = e.states[i];
            const Vector dir = m * psi - (psi.adjoint() * m * psi)(0, 0) * psi;
            grad_norm = std::max(grad_norm, dir.norm());
            double t = std::min(steps[i] * 2.0, 1e3);
            while (t > 1e-12) {
                Vector candidate = psi + t * dir;
                candidate /= candidate.norm();
                std::vector<Vector> trial = e.states;
                trial[i] = candidate;
                if (holevo_quantity(channel, e.probs, trial) > chi0) {
                    e.states[i] = std::move(candidate);
                    steps[i] = t;
                    break;
                }
                t *= 0.5;
            }
        }
        const double chi = holevo_quantity(channel, e.probs, e.states);
        // Blahut-Arimoto upper bound for the current states: max_i D_i >= chi*(states).
        e.gap = max_div - e.chi;
        const double improvement = chi - e.chi;
        e.chi = chi;
        if (std::abs(improvement) < tol * 1e-2 && e.gap < tol && grad_norm < std::sqrt(tol)) {
            e.converged = true;
            break;
        }
        // A start that has stalled far from stationarity is abandoned; the
        // other starts cover for it.
        if ((it + 1) % kStallWindow == 0) {
            if (e.chi - checkpoint < tol) break;
            checkpoint = e.chi;
        }
    }
    return e;
}

}  // namespace

CapacityResult classical_capacity_lb(const QuantumChannel& channel, int ensemble_size, double tol,
                                     std::uint64_t seed, int max_iter) {
    const int din = channel.dim_in();
    if (ensemble_size <= 0) ensemble_size = din * din;
    if (ensemble_size < 2) throw ArgumentError("classical_capacity_lb: ensemble_size must be at least 2");
    if (!(tol > 0.0)) throw ArgumentError("classical_capacity_lb: tol must be positive");
    constexpr int kStarts = 3;
    Ensemble best;
    std::uint64_t best_seed = seed;
    for (int s = 0; s < kStarts; ++s) {
        Rng rng(seed + static_cast<std::uint64_t>(s));
        Ensemble e = holevo_ascent(channel, ensemble_size, tol, rng, max_iter);
        if (s == 0 || e.chi > best.chi) {
            best = std::move(e);
            best_seed = seed + static_cast<std::uint64_t>(s);
        }
    }
    Matrix average = Matrix::Zero(din, din);
    for (int i = 0; i < ensemble_size; ++i) {
        average += best.probs[i] * best.states[i] * best.states[i].adjoint();
    }
    average /= average.trace().real();
    return CapacityResult{
        .value = std::max(0.0, best.chi),
        .optimal_input = DensityMatrix(hermitize(average)),
        .iterations = best.iterations,
        .converged = best.converged,
        .gradient_norm = best.gap,
        .seed = best_seed,
    };
}

// ---------------------------------------------------------------------------

double gradient_check(const Objective& objective, const Gradient& gradient, const DensityMatrix& rho,
                      double h, std::uint64_t seed, int directions) {
    if (!(h > 0.0)) throw ArgumentError("gradient_check: h must be positive");
    const double min_eig = hermitian_eigenvalues(rho.matrix()).front();
    if (!(min_eig > 10.0 * h)) {
        throw PreconditionError("gradient_check: state too close to singular (min eigenvalue " +
                                std::to_string(min_eig) + " <= 10 h)");
    }
    Rng rng(seed);
    const Matrix g = gradient(rho.matrix());
    double worst = 0.0;
    for (int k = 0; k < directions; ++k) {
        const Matrix dir = random_traceless_hermitian(rho.dim(), rng);
        const double analytic = inner(g, dir);
        const double numeric = (objective(rho.matrix() + h * dir) - objective(rho.matrix() - h * dir)) / (2.0 * h);
        worst = std::max(worst, std::abs(analytic - numeric));
    }
    return worst;
}

double gradient_check(const QuantumChannel& channel, const DensityMatrix& rho, double h, std::uint64_t seed,
                      int directions) {
    return gradient_check([&](const Matrix& m) { return ea_objective(m, channel); },
                          [&](const Matrix& m) { return ea_gradient(m, channel); }, rho, h, seed, directions);
}

}  // namespace ftcap
