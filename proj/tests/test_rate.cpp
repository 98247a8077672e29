// SPDX-License-Identifier: Apache-2.0
//
// xlris - rate analysis and phase-shift design for XL-RIS-aided massive MIMO
// Copyright (C) 2026 The xlris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "oracles.hpp"

#include "xlris/aux_values.hpp"
#include "xlris/monte_carlo.hpp"
#include "xlris/rate.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <numeric>

using namespace xlris;

namespace {

double crel(cdouble a, cdouble b, double scale) { return std::abs(a - b) / scale; }

StatisticalChannel identity_corr_channel(std::size_t m, RisGrid grid, std::size_t users, double delta, double eps,
                                         std::vector<VisibilityRegion> vrs, std::uint64_t seed = 3) {
    SystemConfig cfg;
    cfg.m = m;
    cfg.grid = grid;
    cfg.k = users;
    cfg.delta = delta;
    cfg.eps.assign(users, eps);
    cfg.d_ris = cfg.wavelength / 2; // R_ris = I on a single row
    std::mt19937_64 rng(seed);
    return StatisticalChannel::build(cfg, AngleSet::random(users, rng), std::move(vrs));
}

} // namespace

TEST(AuxValues, MatchDenseOracle) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto in = oracle::random_instance(2, 4, 3, 2, seed);
        const PhaseConfig ph(in.theta);
        const AuxTable reduced = aux_table_reduced(reduce(in.stat, ph));
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < 2; ++i) {
                const auto d = oracle::dense_aux(in.stat, in.theta, k, i);
                const AuxValues got = aux_values(in.stat, ph, k, i);
                const AuxValues red = aux_values(reduced, k, i);
                const std::pair<cdouble, cdouble> pairs[] = {
                    {got.f_k, d.f_k},       {got.f_k_1_1, d.f_k11}, {got.f_ki_1_2, d.f_ki12}, {got.f_ki_2, d.f_ki2},
                    {got.f_k_3_1, d.f_k31}, {got.f_ki_3_2, d.f_ki32}, {got.f_ki_4, d.f_ki4},  {got.f_ki_5, d.f_ki5},
                    {got.f_ki_6, d.f_ki6},  {got.f_ki_7, d.f_ki7}};
                const std::pair<cdouble, cdouble> rpairs[] = {
                    {red.f_k, d.f_k},       {red.f_k_1_1, d.f_k11}, {red.f_ki_1_2, d.f_ki12}, {red.f_ki_2, d.f_ki2},
                    {red.f_k_3_1, d.f_k31}, {red.f_ki_3_2, d.f_ki32}, {red.f_ki_4, d.f_ki4},  {red.f_ki_5, d.f_ki5},
                    {red.f_ki_6, d.f_ki6},  {red.f_ki_7, d.f_ki7}};
                for (int f = 0; f < 10; ++f) {
                    const double scale = std::max(std::abs(pairs[f].second), 1e-12);
                    EXPECT_LE(crel(pairs[f].first, pairs[f].second, scale), 1e-12)
                        << "function " << f << " (k, i) = " << k << i << " seed " << seed;
                    EXPECT_LE(crel(rpairs[f].first, rpairs[f].second, scale), 1e-12)
                        << "reduced function " << f << " (k, i) = " << k << i << " seed " << seed;
                }
            }
    }
}

TEST(AuxValues, SingleElementAndIdentityCorrelation) {
    const auto one = identity_corr_channel(2, {1, 1}, 1, 1.0, 1.0, {VisibilityRegion::full(1)});
    const AuxValues v = aux_values(one, PhaseConfig::zeros(1), 0, 0);
    EXPECT_LE(std::abs(v.f_k - std::conj(one.a_n()[0]) * one.hbar(0)[0]), 1e-15);

    const auto s = identity_corr_channel(2, {1, 12}, 1, 1.0, 1.0, {VisibilityRegion::full(12)});
    const AuxValues w = aux_values(s, PhaseConfig(oracle::random_instance(1, 12, 2, 1, 9).theta), 0, 0);
    EXPECT_NEAR(w.f_k_3_1.real(), 12.0, 1e-12);
}

TEST(AuxValues, RealAndNonNegative) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto in = oracle::random_instance(4, 4, 4, 3, seed);
        const AuxTable t = aux_table(in.stat, PhaseConfig(in.theta));
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_GE(t.user[k].f11, -1e-12);
            EXPECT_GE(t.user[k].f31, -1e-12);
            EXPECT_GE(t.pair(k, k).f2.real(), -1e-12);
            EXPECT_LE(std::abs(t.pair(k, k).f2.imag()), 1e-12 * std::max(1.0, std::abs(t.pair(k, k).f2)));
        }
    }
}

TEST(AuxValues, UserIndexChecked) {
    const auto in = oracle::random_instance(2, 2, 2, 2, 1);
    EXPECT_THROW(aux_values(in.stat, PhaseConfig(in.theta), 2, 0), std::invalid_argument);
}

TEST(Terms, NoiseWithoutLineOfSight) {
    const auto s = identity_corr_channel(5, {1, 6}, 1, 0.0, 0.0, {VisibilityRegion::full(6)});
    const double e = noise_term(s, PhaseConfig::zeros(6), 0);
    EXPECT_NEAR(e / (s.c(0) * 5 * 6), 1.0, 1e-12);
}

TEST(Terms, NoiseSingleElementByHand) {
    // N = M = 1: every auxiliary value has modulus one, so
    // E = c (delta eps + delta + eps + 1) = beta alpha.
    for (double delta : {0.0, 0.5, 3.0})
        for (double eps : {0.0, 2.0, 10.0}) {
            const auto s = identity_corr_channel(1, {1, 1}, 1, delta, eps, {VisibilityRegion::full(1)});
            RVec th(1);
            th << 1.234;
            const double want = s.c(0) * (delta * eps + delta + eps + 1.0);
            EXPECT_NEAR(noise_term(s, PhaseConfig(th), 0) / want, 1.0, 1e-12);
            EXPECT_NEAR(want / (s.beta() * s.alpha(0)), 1.0, 1e-12);
        }
}

TEST(Terms, SignalWithoutLineOfSight) {
    const auto in = oracle::random_instance(2, 3, 4, 1, 5, true);
    SystemConfig cfg = in.cfg;
    cfg.delta = 0.0;
    cfg.eps = {0.0};
    std::mt19937_64 rng(4);
    const auto s = StatisticalChannel::build(cfg, AngleSet::random(1, rng), {VisibilityRegion::full(6)});
    const PhaseConfig ph(in.theta);
    const AuxValues a = aux_values(s, ph, 0, 0);
    const double m = 4;
    const double want = s.c(0) * s.c(0) * m * (m + 1) * (a.f_ki_3_2.real() + std::norm(a.f_k_3_1));
    EXPECT_NEAR(signal_term(s, ph, 0) / want, 1.0, 1e-12);
}

TEST(Terms, InterferenceWithoutLineOfSight) {
    const auto in = oracle::random_instance(4, 2, 3, 2, 6);
    SystemConfig cfg = in.cfg;
    cfg.delta = 0.0;
    cfg.eps = {0.0, 0.0};
    std::mt19937_64 rng(4);
    const auto s = StatisticalChannel::build(cfg, AngleSet::random(2, rng), {in.stat.vr(0), in.stat.vr(1)});
    const PhaseConfig ph(in.theta);
    const AuxValues a = aux_values(s, ph, 0, 1);
    const AuxValues b = aux_values(s, ph, 1, 1);
    const double m = 3;
    const double want = s.c(0) * s.c(1) * m * (a.f_k_3_1.real() * b.f_k_3_1.real() + m * a.f_ki_3_2.real());
    EXPECT_NEAR(interference_term(s, ph, 0, 1) / want, 1.0, 1e-12);
}

TEST(Terms, InterferenceNeedsDistinctUsers) {
    const auto in = oracle::random_instance(2, 2, 2, 2, 1);
    EXPECT_THROW(interference_term(in.stat, PhaseConfig(in.theta), 1, 1), std::invalid_argument);
}

TEST(Terms, JensenAndNonNegativity) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto in = oracle::random_instance(4, 4, 1 + seed % 6, 3, seed);
        const RateReport r = closed_form_report(in.stat, PhaseConfig(in.theta), in.cfg.power_w, in.cfg.noise_w);
        for (const auto &u : r.users) {
            EXPECT_GE(u.e_noise, -1e-9);
            EXPECT_GE(u.e_signal, -1e-9);
            EXPECT_GE(u.i_sum, -1e-9);
            EXPECT_GE(u.e_signal, u.e_noise * u.e_noise * (1 - 1e-12));
        }
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t i = 0; i < 3; ++i)
                if (i != k)
                    EXPECT_GE(interference_term(in.stat, PhaseConfig(in.theta), k, i), 0.0);
    }
}

TEST(Report, RateDefinitionAndMinimum) {
    const auto in = oracle::random_instance(3, 3, 4, 3, 2);
    const RateReport r = closed_form_report(in.stat, PhaseConfig(in.theta), in.cfg.power_w, in.cfg.noise_w);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto &u : r.users) {
        EXPECT_DOUBLE_EQ(u.rate, std::log2(1.0 + u.sinr));
        EXPECT_DOUBLE_EQ(u.sinr, in.cfg.power_w * u.e_signal / (in.cfg.power_w * u.i_sum + in.cfg.noise_w * u.e_noise));
        lo = std::min(lo, u.rate);
    }
    EXPECT_EQ(r.min_rate, lo);
    EXPECT_EQ(r.method, RateMethod::ClosedForm);
}

TEST(Report, VanishingPower) {
    const auto in = oracle::random_instance(3, 3, 4, 2, 2);
    const RateReport r = closed_form_report(in.stat, PhaseConfig(in.theta), 1e-30, in.cfg.noise_w);
    for (const auto &u : r.users)
        EXPECT_LT(u.rate, 1e-9);
}

TEST(Report, PureFunction) {
    const auto in = oracle::random_instance(3, 3, 4, 2, 8);
    const auto a = closed_form_report(in.stat, PhaseConfig(in.theta), in.cfg.power_w, in.cfg.noise_w);
    const auto b = closed_form_report(in.stat, PhaseConfig(in.theta), in.cfg.power_w, in.cfg.noise_w);
    EXPECT_EQ(a.rates(), b.rates());
}

TEST(Report, Periodicity) {
    const auto in = oracle::random_instance(3, 3, 4, 3, 12);
    const auto base = closed_form_report(in.stat, PhaseConfig(in.theta), in.cfg.power_w, in.cfg.noise_w).rates();
    for (Eigen::Index n = 0; n < in.theta.size(); ++n) {
        RVec t = in.theta;
        t[n] += kTwoPi;
        const auto shifted = closed_form_report(in.stat, PhaseConfig(t), in.cfg.power_w, in.cfg.noise_w).rates();
        for (std::size_t k = 0; k < base.size(); ++k)
            EXPECT_NEAR(shifted[k], base[k], 1e-12 * base[k]);
    }
}

TEST(Report, PermutationEquivariance) {
    const auto in = oracle::random_instance(6, 3, 4, 3, 17);
    const std::vector<std::size_t> perm{2, 0, 1};
    SystemConfig cfg = in.cfg;
    std::mt19937_64 rng(1);
    AngleSet a = AngleSet::random(3, rng);
    AngleSet b = a;
    std::vector<VisibilityRegion> vrs, pvrs;
    for (std::size_t k = 0; k < 3; ++k)
        vrs.push_back(in.stat.vr(k));
    for (std::size_t k = 0; k < 3; ++k) {
        b.user_aoa_az[k] = a.user_aoa_az[perm[k]];
        b.user_aoa_el[k] = a.user_aoa_el[perm[k]];
        pvrs.push_back(vrs[perm[k]]);
        cfg.eps[k] = in.cfg.eps[perm[k]];
    }
    const auto s1 = StatisticalChannel::build(in.cfg, a, vrs);
    const auto s2 = StatisticalChannel::build(cfg, b, pvrs);
    const auto r1 = closed_form_report(s1, PhaseConfig(in.theta), cfg.power_w, cfg.noise_w);
    const auto r2 = closed_form_report(s2, PhaseConfig(in.theta), cfg.power_w, cfg.noise_w);
    for (std::size_t k = 0; k < 3; ++k)
        EXPECT_NEAR(r2.users[k].rate, r1.users[perm[k]].rate, 1e-12 * r1.users[perm[k]].rate);
    EXPECT_NEAR(r2.min_rate, r1.min_rate, 1e-12 * r1.min_rate);
}

TEST(Reduction, FullRegionsGiveFullObjects) {
    const auto in = oracle::random_instance(3, 3, 2, 2, 3, true);
    const ReducedChannel red = reduce(in.stat, PhaseConfig(in.theta));
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(red.a_n[k], in.stat.a_n());
        EXPECT_EQ(red.hbar[k], in.stat.hbar(k));
        EXPECT_EQ(red.r_vr[k], in.stat.r_vr(k));
        EXPECT_EQ(red.r_cross(k, 1 - k), in.stat.r_ris());
    }
}

TEST(Reduction, SingleVisibleElement) {
    const auto s = identity_corr_channel(2, {2, 2}, 1, 1.0, 1.0, {VisibilityRegion(4, {1})});
    const ReducedChannel red = reduce(s, PhaseConfig::zeros(4));
    ASSERT_EQ(red.a_n[0].size(), 1);
    EXPECT_EQ(red.a_n[0][0], s.a_n()[1]);
}

TEST(Reduction, EmbeddingRoundTrip) {
    const auto in = oracle::random_instance(4, 4, 2, 3, 23);
    const ReducedChannel red = reduce(in.stat, PhaseConfig(in.theta));
    for (std::size_t k = 0; k < 3; ++k) {
        const auto &nu = red.nu[k];
        const auto n = static_cast<Eigen::Index>(in.stat.n());
        CVec a = CVec::Zero(n), h = CVec::Zero(n);
        RMat r = RMat::Zero(n, n);
        for (std::size_t p = 0; p < nu.size(); ++p) {
            a[nu[p]] = red.a_n[k][static_cast<Eigen::Index>(p)];
            h[nu[p]] = red.hbar[k][static_cast<Eigen::Index>(p)];
            for (std::size_t q = 0; q < nu.size(); ++q)
                r(nu[p], nu[q]) = red.r_vr[k](static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        }
        const CVec mask = in.stat.vr(k).mask().cast<cdouble>();
        EXPECT_EQ(a, CVec(mask.cwiseProduct(in.stat.a_n())));
        EXPECT_EQ(h, CVec(mask.cwiseProduct(in.stat.hbar(k))));
        EXPECT_EQ(r, in.stat.r_vr(k));
    }
}

TEST(Reduction, RatesMatchFullPath) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto in = oracle::random_instance(8, 8, 4, 4, seed);
        const PhaseConfig ph(in.theta);
        const auto full = closed_form_report(in.stat, ph, in.cfg.power_w, in.cfg.noise_w);
        const auto red = closed_form_report_reduced(reduce(in.stat, ph), in.stat, in.cfg.power_w, in.cfg.noise_w);
        EXPECT_EQ(red.method, RateMethod::ClosedFormReduced);
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_LE(oracle::rel(red.users[k].rate, full.users[k].rate), 1e-10);
    }
}

TEST(Reduction, UpdatePhaseEqualsFreshReduce) {
    const auto in = oracle::random_instance(4, 4, 3, 2, 31);
    ReducedChannel red = reduce(in.stat, PhaseConfig::zeros(16));
    update_phase(red, PhaseConfig(in.theta));
    const auto a = closed_form_report_reduced(red, in.stat, in.cfg.power_w, in.cfg.noise_w);
    const auto b = closed_form_report_reduced(reduce(in.stat, PhaseConfig(in.theta)), in.stat, in.cfg.power_w,
                                              in.cfg.noise_w);
    EXPECT_EQ(a.rates(), b.rates());
}
