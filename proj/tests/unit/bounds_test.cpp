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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ftcap/capacity.hpp"
#include "ftcap/channels.hpp"
#include "ftcap/errors.hpp"
#include "test_util.hpp"

using namespace ftcap;
using namespace ftcap::testing;

// Reference values below were produced by a 40-digit evaluation of the
// defining formulas, independent of this library.

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    return g;
}

BoundParams default_params() {
    BoundParams b;
    b.c = 10.0;
    b.p0 = 1e-2;
    return b;
}

}  // namespace

TEST(binary_entropy, values_and_domain) {
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.05), 0.286396957115956, 1e-14);
    EXPECT_THROW(binary_entropy(-0.1), ArgumentError);
    EXPECT_THROW(binary_entropy(1.1), ArgumentError);
}

TEST(entropy_envelope, is_monotone_and_saturates) {
    EXPECT_DOUBLE_EQ(entropy_envelope(0.3), binary_entropy(0.3));
    EXPECT_DOUBLE_EQ(entropy_envelope(0.8), 1.0);
    EXPECT_DOUBLE_EQ(entropy_envelope(7.0), 1.0);
}

TEST(eta, values) {
    EXPECT_EQ(eta(0.0, 2, 2).value, 0.0);
    EXPECT_NEAR(eta(0.01, 2, 2).value, 0.664584378164830, 1e-13);
    EXPECT_THROW(eta(-1e-3, 2, 2), ArgumentError);
    double prev = -1.0;
    for (double d : log_grid(1e-8, 1.0 / 8.0, 50)) {
        const double v = eta(d, 2, 2).value;
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(eps_ea, pinned_and_vacuous_cases) {
    EXPECT_NEAR(eps_ea(10000, 0.005, 0.01, 1.4, 1.0, 2, 2), 11.9660659238505, 1e-9);
    // eta(0.05, 2, 2) = 2.34 exceeds I = 1.4: the bound is astronomically vacuous (~3e5868).
    EXPECT_EQ(eps_ea(10000, 0.05, 0.01, 1.4, 1.0, 2, 2), std::numeric_limits<double>::infinity());
    EXPECT_GE(eps_ea(100, 0.01, 0.1, 1.0, 1.0, 2, 2), 8.0);
    EXPECT_THROW(eps_ea(10, 0.01, 0.0, 1.0, 0.5, 2, 2), ArgumentError);
}

TEST(eps_ea, decays_with_positive_gap) {
    // Gap I - eta(1e-4) - R' is positive; beyond the crossover the bound decreases.
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t n : {100000000LL, 1000000000LL, 10000000000LL}) {
        const double v = eps_ea(n, 1e-4, 0.25, 1.9, 1.0, 2, 2);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(f_avp, values_and_limits) {
    EXPECT_EQ(f_avp(0.0, 2, 2).value, 0.0);
    EXPECT_NEAR(f_avp(1e-4, 2, 2).value, 9.28010780475226, 1e-11);
    EXPECT_NEAR(f_avp(1e-6, 2, 2).value, 2.64515047464726, 1e-11);
    EXPECT_LT(f_avp(1e-6, 2, 2).value, f_avp(1e-4, 2, 2).value);
    EXPECT_EQ(f_avp(1e-4, 2, 2).terms.size(), 4u);
}

TEST(f_avp, dimension_monotone_on_grid) {
    for (double p : log_grid(1e-8, 1e-2, 25)) EXPECT_LE(f_avp(p, 2, 2).value, f_avp(p, 4, 4).value);
}

TEST(mi_continuity_bound, values) {
    EXPECT_EQ(mi_continuity_bound(0.0, 2), 0.0);
    EXPECT_NEAR(mi_continuity_bound(0.01, 2), 0.324035318072402, 1e-13);
    EXPECT_THROW(mi_continuity_bound(0.6, 2), ArgumentError);
}

TEST(mi_continuity_bound, dominates_measured_shift_on_random_channels) {
    Rng rng(101);
    const DensityMatrix phi = phi_plus();
    for (int i = 0; i < 10; ++i) {
        auto t = random_channel(2, 2, 2, rng);
        auto opt = ea_capacity(t, 1e-10, 5000);
        const DensityMatrix star = purified_output(QuantumChannel::identity(2), opt.optimal_input);
        const double base = mutual_information(apply_channel(t, star, 0), std::vector<int>{0});
        for (double p : {1e-4, 1e-3}) {
            DensityMatrix mixed((1.0 - p) * star.matrix() + p * phi.matrix(), {2, 2});
            const double shifted = mutual_information(apply_channel(perturbed_channel(t, p), mixed, 0), std::vector<int>{0});
            EXPECT_LE(std::abs(shifted - base), mi_continuity_bound(p, 2) + 1e-9);
        }
    }
}

TEST(effective_channel, endpoints_and_cptp) {
    Rng rng(103);
    auto t = random_channel(2, 2, 2, rng);
    auto n = random_channel(4, 2, 3, rng);
    auto e0 = effective_channel(t, 0.0, n, 2);
    auto ideal = tensor(t, trace_out(2));
    EXPECT_LT(max_abs(choi_matrix(e0) - choi_matrix(ideal)), 1e-10);
    EXPECT_LT(max_abs(choi_matrix(effective_channel(t, 1.0, n, 2)) - choi_matrix(n)), 1e-10);
    auto mid = effective_channel(t, 0.3, n, 2);
    const Matrix choi = choi_matrix(mid);
    EXPECT_GT(hermitian_eigenvalues(choi).front(), -1e-10);
    const Matrix reduced = partial_trace(choi, std::vector<int>{2, 4}, std::vector<int>{1});
    EXPECT_LT(max_abs(reduced - Matrix::Identity(4, 4)), 1e-10);
    EXPECT_THROW(effective_channel(t, 0.3, n, 3), ArgumentError);
}

TEST(postselect_check, ideal_perturbation_has_no_negative_part) {
    Rng rng(107);
    auto t = random_channel(2, 2, 2, rng);
    auto n = tensor(t, trace_out(2));
    for (int blocks : {1, 2}) {
        auto sigma = random_density_matrix(blocks == 1 ? 2 : 4, rng);
        auto r = postselect_check(t, 0.05, n, sigma, blocks, 0.3);
        EXPECT_GT(r.negative_part, -1e-10);
        EXPECT_TRUE(r.holds);
    }
}

TEST(postselect_check, zero_p_is_exact_cp_check) {
    Rng rng(109);
    auto t = random_channel(2, 2, 2, rng);
    auto n = random_channel(4, 2, 2, rng);
    auto r = postselect_check(t, 0.0, n, random_density_matrix(4, rng), 2, 0.3);
    EXPECT_TRUE(r.holds);
    EXPECT_DOUBLE_EQ(r.bound, -1e-8);
}

TEST(postselect_check, random_draws_hold) {
    Rng rng(113);
    auto t = random_channel(2, 2, 2, rng);
    for (int i = 0; i < 10; ++i) {
        auto n = random_channel(4, 2, 4, rng);
        auto r = postselect_check(t, 0.05, n, random_density_matrix(4, rng), 2, 0.3);
        EXPECT_TRUE(r.holds) << r.negative_part << " vs " << r.bound;
    }
    EXPECT_THROW(postselect_check(t, 0.05, random_channel(4, 2, 2, rng), random_density_matrix(2, rng), 2, 0.3),
                 ArgumentError);
    EXPECT_THROW(postselect_check(t, 0.05, random_channel(4, 2, 2, rng), random_density_matrix(2, rng), 3, 0.3),
                 ArgumentError);
}

TEST(hashing_root, value) { EXPECT_NEAR(hashing_root(), 0.189289624915232, 1e-12); }

TEST(f1, values_and_domain) {
    auto b = default_params();
    EXPECT_EQ(f1(0.0, b), 0.0);
    EXPECT_NEAR(f1(1e-4, b), 0.0459837579643324, 1e-14);
    EXPECT_NEAR(f1(1e-4, b, F1Variant::proof), 0.0459837579643324, 1e-14);
    b.j2 = 2;
    EXPECT_NEAR(f1(1e-4, b), 0.0919675159286649, 1e-14);
    EXPECT_NEAR(f1(1e-4, b, F1Variant::proof), 0.0459837579643324, 1e-14);
    EXPECT_THROW(f1(0.005, b), DomainError);
    double prev = -1.0;
    for (double p : log_grid(1e-10, 4e-3, 40)) {
        const double v = f1(p, b);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(f2, values_and_limits) {
    auto b = default_params();
    EXPECT_EQ(f2(0.0, b).value, 0.0);
    EXPECT_NEAR(f2(1e-4, b).value, 6.65194602199087, 1e-11);
    EXPECT_NEAR(f2(1e-6, b).value, 2.14129499681849, 1e-11);
    b.j2 = 2;
    EXPECT_NEAR(f2(1e-4, b).value, 19.9156292308018, 1e-10);
}

TEST(f2_substituted, matches_f_avp_at_scaled_strength) {
    auto b = default_params();
    EXPECT_NEAR(f2_substituted(1e-4, b).value, 31.0238962666811, 1e-10);
    EXPECT_THROW(f2_substituted(0.03, b), DomainError);
}

TEST(alpha_and_rate, values) {
    EXPECT_EQ(alpha(0.0, 10.0, 0.7), 0.0);
    EXPECT_NEAR(alpha(1e-3, 10.0, 0.7), 0.436700984444659, 1e-13);
    EXPECT_THROW(alpha(1e-3, 10.0, 0.0), ArgumentError);
    EXPECT_EQ(r_ea_required(0.0, 10.0), 1.0);
    EXPECT_NEAR(r_ea_required(1e-3, 10.0), 1.44028026747901, 1e-13);
    EXPECT_THROW(r_ea_required(0.0049, 10.0), DomainError);
    EXPECT_LT(r_ea_required(1e-4, 10.0), r_ea_required(1e-3, 10.0));
}

TEST(ft_ea_capacity_lb, limits_and_pins) {
    auto b = default_params();
    const double cea = 1.49681626831942, c = 0.713603042884044;
    b.p = 0.0;
    EXPECT_EQ(ft_ea_capacity_lb(b, cea, c), cea);
    b.p = 1e-5;
    EXPECT_NEAR(ft_penalty(1e-5, b, cea, c), 4.01689626606334, 1e-10);
    EXPECT_EQ(ft_ea_capacity_lb(b, cea, c), 0.0);
    b.p = 0.02;
    EXPECT_THROW(ft_ea_capacity_lb(b, cea, c), DomainError);
    for (double p : log_grid(1e-30, 1e-3, 30)) {
        b.p = p;
        EXPECT_LE(ft_ea_capacity_lb(b, cea, c), cea);
    }
}

TEST(threshold_find, identity_channel_pin) {
    auto b = default_params();
    auto r = threshold_find(0.1, b, 2.0, 1.0);
    EXPECT_TRUE(r.monotone);
    EXPECT_FALSE(r.capped);
    EXPECT_NEAR(r.p_th, 1.87148534910095e-10, 1e-6 * 1.87148534910095e-10);
    EXPECT_LE(ft_penalty(r.p_th, b, 2.0, 1.0), 0.1);
    EXPECT_GT(r.p_th, 0.0);
}

TEST(threshold_find, nondecreasing_in_epsilon) {
    auto b = default_params();
    double prev = 0.0;
    for (double eps : {1e-3, 1e-2, 0.1, 0.5, 1.0, 1.9}) {
        auto r = threshold_find(eps, b, 2.0, 1.0);
        EXPECT_GE(r.p_th, prev);
        prev = r.p_th;
    }
    auto r = threshold_find(3.0, b, 2.0, 1.0);
    EXPECT_TRUE(r.vacuous);
}

TEST(threshold_scaling, values) {
    EXPECT_NEAR(threshold_scaling(1e-4, 1e-3, 2, 100), 1e-5, 1e-18);
    EXPECT_NEAR(threshold_scaling(1e-3, 1e-3, 3, 100), 1e-3 * 100, 1e-15);
    const double r = threshold_scaling(2e-4, 1e-3, 3, 10) / threshold_scaling(2e-4, 1e-3, 2, 10);
    EXPECT_NEAR(r, std::pow(0.2, 4), 1e-15);
    EXPECT_THROW(threshold_scaling(2e-3, 1e-3, 1, 1), ArgumentError);
}

TEST(level_choice, values) {
    EXPECT_EQ(level_choice(1000000, 1e-4, 1e-3, 10000), 5);
    EXPECT_EQ(level_choice(1, 1e-4, 1e-3, 1), 1);
    int prev = 1;
    for (std::int64_t n = 1; n <= 1000000000; n *= 10) {
        const int l = level_choice(n, 3e-4, 1e-3, 1000);
        EXPECT_GE(l, prev);
        prev = l;
    }
    EXPECT_THROW(level_choice(10, 1e-3, 1e-3, 10), ArgumentError);
}

TEST(resource_report, zero_noise_reproduces_standard_tradeoff) {
    auto b = default_params();
    auto r = resource_report(b, 1.0, 1.49681626831942, 0.713603042884044);
    EXPECT_EQ(r.qq_rate, 1.0);
    EXPECT_EQ(r.cc_rate, 1.49681626831942);
    double prev = 0.0;
    for (double p : log_grid(1e-12, 1e-3, 20)) {
        b.p = p;
        const double qq = resource_report(b, 1.0, 1.49681626831942, 0.713603042884044).qq_rate;
        EXPECT_GE(qq, prev);
        prev = qq;
    }
}

TEST(penalties, vanish_at_zero_and_increase_on_log_grid) {
    auto b = default_params();
    EXPECT_EQ(f_avp(0.0, 2, 2).value, 0.0);
    EXPECT_EQ(f1(0.0, b), 0.0);
    EXPECT_EQ(f2(0.0, b).value, 0.0);
    double pa = 0.0, p1 = 0.0, p2 = 0.0;
    for (double p : log_grid(1e-8, 1e-3, 60)) {
        EXPECT_GT(f_avp(p, 2, 2).value, pa);
        EXPECT_GT(f1(p, b), p1);
        EXPECT_GT(f2(p, b).value, p2);
        pa = f_avp(p, 2, 2).value;
        p1 = f1(p, b);
        p2 = f2(p, b).value;
    }
}
