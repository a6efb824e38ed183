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

#include "ftcap/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ftcap/channels.hpp"
#include "ftcap/errors.hpp"

namespace ftcap {
namespace {

const double kLog2Of3 = std::log2(3.0);
constexpr double kPostselectSlack = 1e-8;

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError(std::string(what) + ": p must lie in [0, 1]");
}

void validate(const BoundParams& params) {
    if (!(params.p0 > 0.0 && params.p0 <= 1.0)) throw ArgumentError("p0 must lie in (0, 1]");
    if (!(params.c > 0.0)) throw ArgumentError("c must be positive");
    if (params.j1 < 1 || params.j2 < 1) throw ArgumentError("j1 and j2 must be at least 1");
}

// |x| < 2^31 qubit-count arithmetic is all we need for 2^(j1+j2).
double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError("binary_entropy: argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entropy_envelope(double x) {
    if (!(x >= 0.0)) throw ArgumentError("entropy_envelope: negative argument");
    return binary_entropy(std::min(x, 0.5));
}

Evaluation eta(double delta, int d_a, int d_b) {
    if (!(delta >= 0.0)) throw ArgumentError("eta: delta must be nonnegative");
    if (d_a < 1 || d_b < 1) throw ArgumentError("eta: dimensions must be positive");
    const double d = static_cast<double>(d_a) * d_b;
    const double linear = 2.0 * (d * std::log2(d) + 1.0) * delta;
    const double x = d * delta;
    const double entropic = 2.0 * entropy_envelope(x);
    return {linear + entropic, x > 0.5, {linear, entropic}};
}

double eps_ea(std::int64_t n, double delta, double lambda_min, double mutual_info, double rate, int d_a, int d_b) {
    if (n < 1) throw ArgumentError("eps_ea: n must be at least 1");
    if (!(delta > 0.0)) throw ArgumentError("eps_ea: delta must be positive");
    if (!(lambda_min > 0.0 && lambda_min <= 1.0)) throw ArgumentError("eps_ea: lambda_min must lie in (0, 1]");
    const double nd = static_cast<double>(n);
    const double log_l = std::log2(lambda_min);
    const double typical = log_l == 0.0 ? 0.0 : 12.0 * std::exp(-nd * delta * delta / (2.0 * log_l * log_l));
    const double d = static_cast<double>(d_a) * d_b;
    const double gap = mutual_info - eta(delta, d_a, d_b).value - d * std::log2(nd + 1.0) / nd - rate;
    return typical + 8.0 * std::exp2(-nd * gap);
}

Evaluation f_avp(double p, int d_a, int d_b) {
    require_probability(p, "f_avp");
    if (d_a < 1 || d_b < 1) throw ArgumentError("f_avp: dimensions must be positive");
    if (p == 0.0) return {0.0, false, {0.0, 0.0, 0.0, 0.0}};
    const double d = static_cast<double>(d_a) * d_b;
    const double log_db = std::log2(static_cast<double>(d_b));
    const double delta = std::sqrt(2.0 * log_db * p) * std::abs(std::log2(p * p / d));
    Evaluation e = eta(delta, d_a, d_b);
    const double y = 2.0 * p / (1.0 + 2.0 * p);
    const double perturbation = 5.0 * p * log_db;
    const double continuity = 2.0 * (1.0 + 2.0 * p) * entropy_envelope(y);
    e.terms.push_back(perturbation);
    e.terms.push_back(continuity);
    e.value += perturbation + continuity;
    e.saturated = e.saturated || y > 0.5;
    return e;
}

double mi_continuity_bound(double p, int d_b) {
    if (!(p >= 0.0 && p <= 0.5)) throw ArgumentError("mi_continuity_bound: p must lie in [0, 1/2]");
    return 4.0 * p * std::log2(static_cast<double>(d_b)) + 2.0 * (1.0 + 2.0 * p) * binary_entropy(2.0 * p / (1.0 + 2.0 * p));
}

QuantumChannel effective_channel(const QuantumChannel& t, double p, const QuantumChannel& n, int syndrome_dim) {
    require_probability(p, "effective_channel");
    if (syndrome_dim < 1) throw ArgumentError("effective_channel: syndrome_dim must be positive");
    if (n.dim_in() != t.dim_in() * syndrome_dim || n.dim_out() != t.dim_out()) {
        throw ArgumentError("effective_channel: N must map dim_in(T) * syndrome_dim -> dim_out(T)");
    }
    std::vector<Matrix> ops;
    if (p < 1.0) {
        const double w = std::sqrt(1.0 - p);
        for (const auto& k : t.kraus()) {
            for (int s = 0; s < syndrome_dim; ++s) {
                Matrix bra = Matrix::Zero(1, syndrome_dim);
                bra(0, s) = 1.0;
                ops.push_back(w * kron(k, bra));
            }
        }
    }
    if (p > 0.0) {
        for (const auto& k : n.kraus()) ops.push_back(std::sqrt(p) * k);
    }
    return QuantumChannel(n.dim_in(), n.dim_out(), std::move(ops), 1e-9);
}

QuantumChannel perturbed_channel(const QuantumChannel& t, double p) {
    require_probability(p, "perturbed_channel");
    const int db = t.dim_out();
    const std::array<QuantumChannel, 2> parts{t, replacement(t.dim_in(), Matrix::Identity(db, db) / static_cast<double>(db))};
    const std::array<double, 2> weights{1.0 - p, p};
    return convex_combination(parts, weights);
}

PostselectReport postselect_check(const QuantumChannel& t, double p, const QuantumChannel& n_channel,
                                  const DensityMatrix& sigma_s, int n, double delta_tilde) {
    if (n != 1 && n != 2) throw ArgumentError("postselect_check: n must be 1 or 2");
    require_probability(p, "postselect_check");
    if (!(delta_tilde > 0.0)) throw ArgumentError("postselect_check: delta_tilde must be positive");
    const int da = t.dim_in();
    const int db = t.dim_out();
    if (n_channel.dim_in() % da != 0) throw ArgumentError("postselect_check: N input is not data x syndrome");
    const int ds = n_channel.dim_in() / da;
    const int ds_n = n == 1 ? ds : ds * ds;
    if (sigma_s.dim() != ds_n) throw ArgumentError("postselect_check: sigma_S dimension must be syndrome_dim^n");

    const QuantumChannel tpn = effective_channel(t, p, n_channel, ds);
    const QuantumChannel tp = perturbed_channel(t, p);
    const QuantumChannel w = n == 1 ? tpn : tensor(tpn, tpn);
    const QuantumChannel tp_n = n == 1 ? tp : tensor(tp, tp);

    // W acts on (A1 S1 A2 S2); the syndrome state is supplied as (S1 S2).
    // perm maps the (A1 A2 S1 S2) basis onto W's input ordering.
    const int da_n = n == 1 ? da : da * da;
    const int din = da_n * ds_n;
    Matrix perm = Matrix::Zero(din, din);
    for (int index = 0; index < din; ++index) {
        const int a = index / ds_n;
        const int s = index % ds_n;
        int target = 0;
        if (n == 1) {
            target = a * ds + s;
        } else {
            const int a1 = a / da, a2 = a % da, s1 = s / ds, s2 = s % ds;
            target = ((a1 * ds + s1) * da + a2) * ds + s2;
        }
        perm(target, index) = 1.0;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> sigma_eig(sigma_s.matrix());
    const Matrix id_a = Matrix::Identity(da_n, da_n);
    std::vector<Matrix> ops;
    for (int k = 0; k < ds_n; ++k) {
        const double lambda = sigma_eig.eigenvalues()(k);
        if (lambda <= 1e-15) continue;
        const Matrix embed = std::sqrt(lambda) * perm * kron(id_a, sigma_eig.eigenvectors().col(k));
        for (const auto& l : w.kraus()) ops.push_back(l * embed);
    }
    const QuantumChannel fed(da_n, w.dim_out(), std::move(ops), 1e-8);

    PostselectReport report;
    report.scale = std::pow(static_cast<double>(db), n * (p + delta_tilde));
    const Matrix delta = report.scale * choi_matrix(tp_n) - choi_matrix(fed);
    for (double l : hermitian_eigenvalues(delta)) report.negative_part += std::min(l, 0.0);
    const double tail = p == 0.0 ? 0.0 : std::exp(-n * delta_tilde * delta_tilde / (3.0 * p));
    report.bound = -tail * std::pow(static_cast<double>(da), n) - kPostselectSlack;
    report.holds = report.negative_part >= report.bound;
    return report;
}

std::vector<PostselectReport> postselect_random_draws(int n, double p, double delta_tilde, int draws,
                                                      std::uint64_t seed) {
    if (draws < 0) throw ArgumentError("postselect_random_draws: draws must be nonnegative");
    Rng rng(seed);
    std::vector<PostselectReport> out;
    const int ds_n = n == 2 ? 4 : 2;
    for (int i = 0; i < draws; ++i) {
        const auto t = random_channel(2, 2, 1 + static_cast<int>(rng() % 4), rng);
        const auto noise = random_channel(4, 2, 2 + static_cast<int>(rng() % 7), rng);
        const auto sigma = random_density_matrix(ds_n, rng, 1 + static_cast<int>(rng() % ds_n));
        out.push_back(postselect_check(t, p, noise, sigma, n, delta_tilde));
    }
    return out;
}

double hashing_root() {
    static const double root = [] {
        double lo = 0.0, hi = 0.5;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (binary_entropy(mid) + mid * kLog2Of3 < 1.0 ? lo : hi) = mid;
        }
        return lo;
    }();
    return root;
}

double distill_entropy(double p, double c) {
    const double q = 4.0 * c * p;
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("distill_entropy: 4cp must lie in [0, 1]");
    return binary_entropy(q) + q * kLog2Of3;
}

double f1(double p, const BoundParams& params, F1Variant variant) {
    validate(params);
    if (p < 0.0) throw ArgumentError("f1: p must be nonnegative");
    const double h = distill_entropy(p, params.c);
    const double denominator = 1.0 - h;
    if (!(denominator > 0.0)) throw DomainError("f1: 1 - h(4cp) - 4cp log 3 <= 0 (no distillation yield)");
    const double factor = variant == F1Variant::theorem ? static_cast<double>(params.j2) : 1.0;
    return h * factor / denominator;
}

Evaluation f2(double p, const BoundParams& params) {
    validate(params);
    if (p < 0.0) throw ArgumentError("f2: p must be nonnegative");
    if (p == 0.0) return {0.0, false, {0.0, 0.0, 0.0, 0.0}};
    const double j = params.j1 + params.j2;
    const double cp = params.c * p;
    const double root = std::sqrt(2.0 * params.j2 * p);
    const double logs = std::abs(2.0 * std::log2(2.0 * j * cp) - j);
    const double t1 = 2.0 * root * (pow2(params.j1 + params.j2) * j + 1.0) * logs;
    const double x = root * pow2(params.j1 + params.j2) * logs;
    const double t2 = 2.0 * entropy_envelope(x);
    const double t3 = 10.0 * j * cp * params.j2;
    const double y = 4.0 * j * cp / (1.0 + 4.0 * j * cp);
    const double t4 = (1.0 + 4.0 * j * cp) * entropy_envelope(y);
    return {t1 + t2 + t3 + t4, x > 0.5 || y > 0.5, {t1, t2, t3, t4}};
}

Evaluation f2_substituted(double p, const BoundParams& params) {
    validate(params);
    const double q = 2.0 * (params.j1 + params.j2) * params.c * p;
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("f2_substituted: 2(j1+j2)cp must lie in [0, 1]");
    return f_avp(q, 1 << params.j1, 1 << params.j2);
}

double alpha(double p, double c, double classical_capacity) {
    if (!(classical_capacity > 0.0)) throw ArgumentError("alpha: classical capacity must be positive");
    return distill_entropy(p, c) / classical_capacity;
}

double r_ea_required(double p, double c) {
    const double denominator = 1.0 - distill_entropy(p, c);
    if (!(denominator > 0.0)) throw DomainError("r_ea_required: 1 - h(4cp) - 4cp log 3 <= 0");
    return 1.0 / denominator;
}

double domain_cap(const BoundParams& params) {
    validate(params);
    const double effective = std::min(params.p0 / 2.0, 1.0 / (2.0 * params.c * (params.j1 + params.j2)));
    // f1 is finite only strictly below the hashing root.
    const double yield = std::nextafter(hashing_root() / (4.0 * params.c), 0.0);
    return std::min(effective, yield);
}

double ft_penalty(double p, const BoundParams& params, double cea, double classical_capacity, F1Variant variant) {
    if (!(classical_capacity > 0.0)) throw ArgumentError("classical capacity must be positive");
    return 4.0 * f1(p, params, variant) * cea / classical_capacity + f2(p, params).value;
}

double ft_ea_capacity_lb(const BoundParams& params, double cea, double classical_capacity, F1Variant variant) {
    validate(params);
    if (params.p < 0.0) throw ArgumentError("ft_ea_capacity_lb: p must be nonnegative");
    const double limit = std::min(params.p0 / 2.0, 1.0 / (2.0 * params.c * (params.j1 + params.j2)));
    if (params.p > limit) throw DomainError("ft_ea_capacity_lb: p exceeds min(p0/2, 1/(2c(j1+j2)))");
    return std::max(0.0, cea - ft_penalty(params.p, params, cea, classical_capacity, variant));
}

ThresholdResult threshold_find(double epsilon, const BoundParams& params, double cea, double classical_capacity,
                               F1Variant variant) {
    if (!(epsilon > 0.0)) throw ArgumentError("threshold_find: epsilon must be positive");
    if (!(cea > 0.0)) throw ArgumentError("threshold_find: capacity must be positive");
    ThresholdResult result;
    result.cap = domain_cap(params);
    result.vacuous = epsilon >= cea;
    auto penalty = [&](double p) {
        ++result.evaluations;
        return ft_penalty(p, params, cea, classical_capacity, variant);
    };

    constexpr int kSamples = 256;
    std::vector<double> grid(kSamples), values(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        grid[i] = result.cap * std::pow(1e-12, 1.0 - static_cast<double>(i) / (kSamples - 1));
        values[i] = penalty(grid[i]);
        if (i > 0 && values[i] < values[i - 1] * (1.0 - 1e-12)) result.monotone = false;
    }
    if (values.back() <= epsilon && result.monotone) {
        result.p_th = result.cap;
        result.capped = true;
        return result;
    }

    double lo = 0.0, hi = result.cap;
    if (!result.monotone) {
        // Largest grid prefix that stays below epsilon, refined in the next cell.
        int last = -1;
        while (last + 1 < kSamples && values[last + 1] <= epsilon) ++last;
        if (last == kSamples - 1) {
            result.p_th = result.cap;
            result.capped = true;
            return result;
        }
        lo = last >= 0 ? grid[last] : 0.0;
        hi = grid[last + 1];
    }
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        (penalty(mid) <= epsilon ? lo : hi) = mid;
    }
    result.p_th = lo;
    return result;
}

double threshold_scaling(double p, double p0, int l, std::int64_t loc) {
    if (!(p0 > 0.0 && p0 <= 1.0)) throw ArgumentError("threshold_scaling: p0 must lie in (0, 1]");
    if (!(p >= 0.0 && p <= p0)) throw ArgumentError("threshold_scaling: p must lie in [0, p0]");
    if (l < 0 || loc < 0) throw ArgumentError("threshold_scaling: l and loc must be nonnegative");
    return p0 * std::pow(p / p0, std::ldexp(1.0, l)) * static_cast<double>(loc);
}

int level_choice(std::int64_t n, double p, double p0, std::int64_t loc_total) {
    if (n < 1) throw ArgumentError("level_choice: n must be at least 1");
    if (!(p0 > 0.0 && p0 <= 1.0)) throw ArgumentError("level_choice: p0 must lie in (0, 1]");
    if (!(p >= 0.0 && p < p0)) throw ArgumentError("level_choice: p must lie in [0, p0)");
    if (loc_total < 0) throw ArgumentError("level_choice: loc_total must be nonnegative");
    if (p == 0.0 || loc_total == 0) return 1;
    const double log_ratio = std::log(p / p0);
    const double target = -std::log(static_cast<double>(n)) - std::log(static_cast<double>(loc_total));
    constexpr int kMaxLevel = 62;
    for (int l = 1; l <= kMaxLevel; ++l) {
        if (std::ldexp(1.0, l - 1) * log_ratio <= target + 1e-12) return l;
    }
    throw DomainError("level_choice: no level up to 62 suffices (p too close to p0)");
}

ResourceReport resource_report(const BoundParams& params, double input_entropy, double cea,
                               double classical_capacity, F1Variant variant) {
    ResourceReport r;
    r.input_entropy = input_entropy;
    r.mutual_info = cea;
    r.qq_rate = input_entropy * r_ea_required(params.p, params.c);
    r.cc_rate = ft_ea_capacity_lb(params, cea, classical_capacity, variant);
    return r;
}

std::string to_string(F1Variant variant) { return variant == F1Variant::theorem ? "theorem" : "proof"; }

F1Variant parse_f1_variant(const std::string& name) {
    if (name == "theorem") return F1Variant::theorem;
    if (name == "proof") return F1Variant::proof;
    throw ArgumentError("unknown f1 variant '" + name + "' (expected theorem or proof)");
}

}  // namespace ftcap
