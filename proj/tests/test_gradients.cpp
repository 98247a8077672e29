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

#include "xlris/diagnostics.hpp"
#include "xlris/errors.hpp"
#include "xlris/gradients.hpp"
#include "xlris/rate.hpp"
#include "xlris/smoothing.hpp"

#include <gtest/gtest.h>

using namespace xlris;

namespace {

CMat random_hermitian(Eigen::Index n, std::mt19937_64 &rng) {
    const CMat g = complex_gaussian(n, n, rng);
    return g + g.adjoint();
}

void check_aux(const oracle::Instance &in, std::size_t k, std::size_t i, const char *name, const CVec &grad,
               const std::function<cdouble(const oracle::DenseAux &)> &pick, double tol) {
    auto re = [&](const RVec &t) { return pick(oracle::dense_aux(in.stat, t, k, i)).real(); };
    auto im = [&](const RVec &t) { return pick(oracle::dense_aux(in.stat, t, k, i)).imag(); };
    // differences of a real-valued function only carry rounding noise
    const double floor = 1e-3 * std::max(1.0, std::abs(pick(oracle::dense_aux(in.stat, in.theta, k, i))));
    EXPECT_LE(oracle::max_rel(grad.real(), oracle::central_difference(re, in.theta)), tol) << name << " re " << k << i;
    EXPECT_LE(oracle::max_rel(grad.imag(), oracle::central_difference(im, in.theta), floor), tol) << name << " im " << k << i;
}

} // namespace

TEST(GradFa, IdentityGivesZero) {
    RVec th = RVec::LinSpaced(5, 0.3, 4.0);
    const CMat i5 = CMat::Identity(5, 5);
    EXPECT_LE(grad_f_a(i5, i5, PhaseConfig(th)).norm(), 1e-15);
}

TEST(GradFa, SingleElementGivesZero) {
    CMat a(1, 1), b(1, 1);
    a << cdouble(2.0, 0.0);
    b << cdouble(3.0, 0.0);
    RVec th(1);
    th << 0.7;
    EXPECT_EQ(grad_f_a(a, b, PhaseConfig(th))[0], 0.0);
}

TEST(GradFa, MatchesFiniteDifferences) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        const CMat a = random_hermitian(6, rng), b = random_hermitian(6, rng);
        RVec th(6);
        for (Eigen::Index j = 0; j < 6; ++j)
            th[j] = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
        auto f = [&](const RVec &x) {
            const CMat phi = PhaseConfig(x).matrix();
            return (a * phi * b * phi.adjoint()).trace().real();
        };
        const RVec g = grad_f_a(a, b, PhaseConfig(th));
        const RVec fd = oracle::central_difference(f, th);
        for (Eigen::Index j = 0; j < 6; ++j)
            EXPECT_LE(std::abs(g[j] - fd[j]), 1e-6 * std::max(1.0, std::abs(fd[j])));
    }
}

TEST(GradFa, ComplexTraceRejected) {
    std::mt19937_64 rng(4);
    const CMat a = complex_gaussian(4, 4, rng), b = complex_gaussian(4, 4, rng);
    RVec th = RVec::LinSpaced(4, 0.1, 2.0);
    EXPECT_THROW(grad_f_a(a, b, PhaseConfig(th)), NumericalError);
    // the complex form still differentiates the complex trace
    auto re = [&](const RVec &x) {
        const CMat phi = PhaseConfig(x).matrix();
        return (a * phi * b * phi.adjoint()).trace().real();
    };
    auto im = [&](const RVec &x) {
        const CMat phi = PhaseConfig(x).matrix();
        return (a * phi * b * phi.adjoint()).trace().imag();
    };
    const CVec g = grad_f_a_complex(a, b, PhaseConfig(th));
    EXPECT_LE(oracle::max_rel(g.real(), oracle::central_difference(re, th)), 1e-6);
    EXPECT_LE(oracle::max_rel(g.imag(), oracle::central_difference(im, th)), 1e-6);
}

TEST(GradFa, DimensionMismatch) {
    EXPECT_THROW(grad_f_a(CMat::Identity(3, 3), CMat::Identity(2, 2), PhaseConfig::zeros(3)), std::invalid_argument);
}

TEST(AuxGradients, SingleElementAllZero) {
    SystemConfig cfg;
    cfg.m = 3;
    cfg.grid = {1, 1};
    cfg.k = 1;
    cfg.eps = {2.0};
    std::mt19937_64 rng(1);
    const auto s = StatisticalChannel::build(cfg, AngleSet::random(1, rng), {VisibilityRegion::full(1)});
    const AuxGradients g = aux_gradients(s, PhaseConfig::zeros(1), 0, 0);
    for (const CVec *v : {&g.f_k_1_1, &g.f_ki_1_2, &g.f_k_3_1, &g.f_ki_3_2, &g.f_ki_4, &g.f_ki_5, &g.f_ki_6})
        EXPECT_LE(v->norm(), 1e-15);
    // |f_k|^2 and f_kk,2 are phase invariant here
    const AuxTable a = aux_table(s, PhaseConfig::zeros(1));
    EXPECT_LE(std::abs((std::conj(a.user[0].f) * g.f_k[0]).real()), 1e-15);
    EXPECT_LE(std::abs(g.f_ki_2[0].real()), 1e-15);
}

TEST(AuxGradients, MatchDenseFiniteDifferences) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto in = oracle::random_instance(2, 4, 3, 2, 100 + seed);
        const AuxGradTable t = aux_grad_table(in.stat, PhaseConfig(in.theta));
        const double tol = 1e-5;
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < 2; ++i) {
                const AuxGradients g = aux_gradients(t, k, i);
                check_aux(in, k, i, "f_k", g.f_k, [](const auto &d) { return d.f_k; }, tol);
                check_aux(in, k, i, "f_k11", g.f_k_1_1, [](const auto &d) { return d.f_k11; }, tol);
                check_aux(in, k, i, "f_ki12", g.f_ki_1_2, [](const auto &d) { return d.f_ki12; }, tol);
                check_aux(in, k, i, "f_ki2", g.f_ki_2, [](const auto &d) { return d.f_ki2; }, tol);
                check_aux(in, k, i, "f_k31", g.f_k_3_1, [](const auto &d) { return d.f_k31; }, tol);
                check_aux(in, k, i, "f_ki32", g.f_ki_3_2, [](const auto &d) { return d.f_ki32; }, tol);
                check_aux(in, k, i, "f_ki4", g.f_ki_4, [](const auto &d) { return d.f_ki4; }, tol);
                check_aux(in, k, i, "f_ki5", g.f_ki_5, [](const auto &d) { return d.f_ki5; }, tol);
                check_aux(in, k, i, "f_ki6", g.f_ki_6, [](const auto &d) { return d.f_ki6; }, tol);
                check_aux(in, k, i, "f_ki7", g.f_ki_7, [](const auto &d) { return d.f_ki7; }, tol);
                check_aux(in, i, k, "f_ik4", g.f_ik_4, [](const auto &d) { return d.f_ki4; }, tol);
                check_aux(in, i, k, "f_ik5", g.f_ik_5, [](const auto &d) { return d.f_ki5; }, tol);
                check_aux(in, i, k, "f_ik6", g.f_ik_6, [](const auto &d) { return d.f_ki6; }, tol);
                check_aux(in, i, k, "f_ik6*", g.f_ik_6_conj, [](const auto &d) { return std::conj(d.f_ki6); }, tol);
            }
    }
}

TEST(AuxGradients, DiagonalPairConsistent) {
    const auto in = oracle::random_instance(4, 2, 2, 2, 8);
    const AuxGradTable t = aux_grad_table(in.stat, PhaseConfig(in.theta));
    for (std::size_t k = 0; k < 2; ++k)
        EXPECT_EQ(aux_gradients(t, k, k).f_ki_2, t.pair(k, k).f2);
    EXPECT_THROW(aux_gradients(t, 0, 2), std::invalid_argument);
}

TEST(TermGradients, NoiseWithoutLineOfSight) {
    auto in = oracle::random_instance(2, 4, 3, 1, 5, true);
    SystemConfig cfg = in.cfg;
    cfg.delta = 0.0;
    cfg.eps = {0.0};
    std::mt19937_64 rng(1);
    const auto s = StatisticalChannel::build(cfg, AngleSet::random(1, rng), {VisibilityRegion::full(8)});
    const TermGradients g = grad_terms(s, PhaseConfig(in.theta), 0, 0);
    const AuxGradTable t = aux_grad_table(s, PhaseConfig(in.theta));
    EXPECT_LE((g.noise - s.c(0) * 3.0 * t.user[0].f31).norm(), 1e-14 * std::max(1.0, g.noise.norm()));
    EXPECT_EQ(g.interference, RVec::Zero(8));
}

TEST(TermGradients, MatchFiniteDifferences) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto in = oracle::random_instance(2, 4, 4, 2, 40 + seed);
        for (std::size_t k = 0; k < 2; ++k) {
            const std::size_t i = 1 - k;
            const TermGradients g = grad_terms(in.stat, PhaseConfig(in.theta), k, i);
            auto noise = [&](const RVec &t) { return noise_term(in.stat, PhaseConfig(t), k); };
            auto signal = [&](const RVec &t) { return signal_term(in.stat, PhaseConfig(t), k); };
            auto inter = [&](const RVec &t) { return interference_term(in.stat, PhaseConfig(t), k, i); };
            EXPECT_LE(oracle::max_rel(g.noise, oracle::central_difference(noise, in.theta), 1e-30), 1e-5);
            EXPECT_LE(oracle::max_rel(g.signal, oracle::central_difference(signal, in.theta), 1e-30), 1e-5);
            EXPECT_LE(oracle::max_rel(g.interference, oracle::central_difference(inter, in.theta), 1e-30), 1e-5);
        }
    }
}

TEST(ObjectiveGradient, MatchesFiniteDifferences) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto in = oracle::random_instance(2, 4, 4, 2, 60 + seed);
        const double mu = 40.0;
        auto f = [&](const RVec &t) {
            return smoothed_min(closed_form_report(in.stat, PhaseConfig(t), in.cfg.power_w, in.cfg.noise_w).rates(),
                                mu);
        };
        const RVec g = grad_objective(in.stat, PhaseConfig(in.theta), in.cfg.power_w, in.cfg.noise_w, mu);
        EXPECT_LE(oracle::max_rel(g, oracle::central_difference(f, in.theta)), 1e-5) << "seed " << seed;
    }
}

TEST(ObjectiveGradient, SingleUserChainRule) {
    const auto in = oracle::random_instance(2, 3, 3, 1, 77);
    const PhaseConfig ph(in.theta);
    const double p = in.cfg.power_w, s2 = in.cfg.noise_w;
    const TermGradients t = grad_terms(in.stat, ph, 0, 0);
    const auto rep = closed_form_report(in.stat, ph, p, s2);
    const UserRate &u = rep.users[0];
    const RVec d_sinr = (p * t.signal * s2 * u.e_noise - p * u.e_signal * s2 * t.noise) / std::pow(s2 * u.e_noise, 2);
    const RVec want = d_sinr / (std::log(2.0) * (1.0 + u.sinr));
    const RVec got = grad_objective(in.stat, ph, p, s2, 200.0);
    EXPECT_LE((got - want).norm(), 1e-10 * want.norm());
}

TEST(ObjectiveGradient, Periodic) {
    const auto in = oracle::random_instance(3, 3, 3, 2, 15);
    const RVec g = grad_objective(in.stat, PhaseConfig(in.theta), in.cfg.power_w, in.cfg.noise_w, 200.0);
    for (Eigen::Index n = 0; n < in.theta.size(); n += 3) {
        RVec t = in.theta;
        t[n] += kTwoPi;
        const RVec h = grad_objective(in.stat, PhaseConfig(t), in.cfg.power_w, in.cfg.noise_w, 200.0);
        EXPECT_LE((g - h).norm(), 1e-10 * std::max(g.norm(), 1e-300));
    }
}

TEST(ObjectiveGradient, ZeroOutsideRegions) {
    SystemConfig cfg;
    cfg.m = 4;
    cfg.grid = {3, 3};
    cfg.k = 2;
    cfg.eps = {2.0, 2.0};
    std::mt19937_64 rng(3);
    const auto s = StatisticalChannel::build(cfg, AngleSet::random(2, rng),
                                             {VisibilityRegion(9, {0, 1, 3}), VisibilityRegion(9, {1, 2, 5})});
    const RVec g = grad_objective(s, PhaseConfig(RVec::LinSpaced(9, 0.2, 6.0)), cfg.power_w, cfg.noise_w, 200.0);
    for (Eigen::Index n : {4, 6, 7, 8})
        EXPECT_EQ(g[n], 0.0);
}

TEST(GradientCheck, BuiltInSuitePasses) {
    const GradCheckReport rep = gradient_check(6, 3);
    EXPECT_FALSE(rep.entries.empty());
    EXPECT_LE(rep.worst, 1e-5);
}
