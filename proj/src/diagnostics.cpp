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

#include "xlris/diagnostics.hpp"

#include "xlris/experiment.hpp"
#include "xlris/gradients.hpp"
#include "xlris/monte_carlo.hpp"
#include "xlris/rate.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <random>

namespace xlris {

namespace {

double rel_error(const RVec &analytic, const RVec &fd, double floor) {
    const double scale = std::max(fd.lpNorm<Eigen::Infinity>(), floor);
    return (analytic - fd).lpNorm<Eigen::Infinity>() / scale;
}

RVec central_difference(const std::function<double(const RVec &)> &f, const RVec &theta, double h) {
    RVec g(theta.size());
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
        RVec a = theta, b = theta;
        a[j] += h;
        b[j] -= h;
        g[j] = (f(a) - f(b)) / (2.0 * h);
    }
    return g;
}

} // namespace

GradCheckReport gradient_check(std::size_t instances, std::uint64_t seed, double h, double floor) {
    constexpr std::array<std::size_t, 3> kN{4, 8, 16};
    constexpr std::array<std::size_t, 3> kM{2, 4, 8};
    GradCheckReport rep;
    std::mt19937_64 rng(seed);
    for (std::size_t inst = 0; inst < instances; ++inst) {
        SystemConfig cfg;
        cfg.grid = grid_for(kN[inst % kN.size()]);
        cfg.m = kM[(inst / kN.size()) % kM.size()];
        cfg.k = 1 + inst % 3;
        std::uniform_real_distribution<double> fac(0.0, 5.0);
        cfg.delta = fac(rng);
        cfg.eps.clear();
        for (std::size_t k = 0; k < cfg.k; ++k)
            cfg.eps.push_back(fac(rng));
        const AngleSet angles = AngleSet::random(cfg.k, rng);
        RandomVrSpec vr_spec;
        vr_spec.overlap = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        std::vector<VisibilityRegion> vrs;
        if (cfg.grid.rows >= cfg.k || cfg.grid.cols >= cfg.k)
            vrs = build_random_vrs(vr_spec, cfg.grid, cfg.k, rng);
        else
            vrs.assign(cfg.k, VisibilityRegion::full(cfg.n()));
        const StatisticalChannel stat = StatisticalChannel::build(cfg, angles, vrs);
        RVec theta(static_cast<Eigen::Index>(cfg.n()));
        for (Eigen::Index j = 0; j < theta.size(); ++j)
            theta[j] = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);

        const AuxGradTable grads = aux_grad_table(stat, PhaseConfig(theta));
        const AuxTable aux = aux_table(stat, PhaseConfig(theta));
        // `magnitude` scales the floor: |f| for real functions, the modulus
        // for either part of a complex one.
        auto push = [&](std::string name, const RVec &analytic, const std::function<double(const RVec &)> &f,
                        double magnitude = -1.0) {
            if (magnitude < 0.0)
                magnitude = std::abs(f(theta));
            const double e =
                rel_error(analytic, central_difference(f, theta, h), floor * std::max(1.0, magnitude));
            rep.entries.push_back({std::move(name), inst, e});
            rep.worst = std::max(rep.worst, e);
        };
        auto aux_at = [&](const RVec &t) { return aux_table(stat, PhaseConfig(t)); };
        for (std::size_t k = 0; k < cfg.k; ++k) {
            const UserAuxGrad &u = grads.user[k];
            const double f_mag = std::abs(aux.user[k].f);
            push("f_k.re", u.f.real(), [&](const RVec &t) { return aux_at(t).user[k].f.real(); }, f_mag);
            push("f_k.im", u.f.imag(), [&](const RVec &t) { return aux_at(t).user[k].f.imag(); }, f_mag);
            push("f_k_1_1", u.f11, [&](const RVec &t) { return aux_at(t).user[k].f11; });
            push("f_k_3_1", u.f31, [&](const RVec &t) { return aux_at(t).user[k].f31; });
            for (std::size_t i = 0; i < cfg.k; ++i) {
                const PairAuxGrad &v = grads.pair(k, i);
                const PairAux &a = aux.pair(k, i);
                push("f_ki_1_2", v.f12, [&](const RVec &t) { return aux_at(t).pair(k, i).f12; });
                push("f_ki_2.re", v.f2.real(), [&](const RVec &t) { return aux_at(t).pair(k, i).f2.real(); },
                     std::abs(a.f2));
                push("f_ki_2.im", v.f2.imag(), [&](const RVec &t) { return aux_at(t).pair(k, i).f2.imag(); },
                     std::abs(a.f2));
                push("f_ki_3_2", v.f32, [&](const RVec &t) { return aux_at(t).pair(k, i).f32; });
                push("f_ki_4", v.f4, [&](const RVec &t) { return aux_at(t).pair(k, i).f4; });
                push("f_ki_5.re", v.f5.real(), [&](const RVec &t) { return aux_at(t).pair(k, i).f5.real(); },
                     std::abs(a.f5));
                push("f_ki_5.im", v.f5.imag(), [&](const RVec &t) { return aux_at(t).pair(k, i).f5.imag(); },
                     std::abs(a.f5));
                push("f_ki_6.re", v.f6.real(), [&](const RVec &t) { return aux_at(t).pair(k, i).f6.real(); },
                     std::abs(a.f6));
                push("f_ki_6.im", v.f6.imag(), [&](const RVec &t) { return aux_at(t).pair(k, i).f6.imag(); },
                     std::abs(a.f6));
                push("f_ki_7.re", v.f7.real(), [&](const RVec &t) { return aux_at(t).pair(k, i).f7.real(); },
                     std::abs(a.f7));
                push("f_ki_7.im", v.f7.imag(), [&](const RVec &t) { return aux_at(t).pair(k, i).f7.imag(); },
                     std::abs(a.f7));
            }
            push("noise", grad_noise(stat, aux, grads, k), [&](const RVec &t) { return noise_term(stat, PhaseConfig(t), k); });
            push("signal", grad_signal(stat, aux, grads, k),
                 [&](const RVec &t) { return signal_term(stat, PhaseConfig(t), k); });
            for (std::size_t i = 0; i < cfg.k; ++i)
                if (i != k)
                    push("interference", grad_interference(stat, aux, grads, k, i),
                         [&](const RVec &t) { return interference_term(stat, PhaseConfig(t), k, i); });
        }
        const double mu = 50.0;
        push("objective", grad_objective(stat, PhaseConfig(theta), cfg.power_w, cfg.noise_w, mu), [&](const RVec &t) {
            return smoothed_min(closed_form_report(stat, PhaseConfig(t), cfg.power_w, cfg.noise_w).rates(), mu);
        });
    }
    return rep;
}

std::vector<McCheckEntry> mc_check(const McCheckOptions &opts) {
    ExperimentSpec spec;
    spec.scenario.m = opts.m;
    spec.scenario.grid = grid_for(opts.n);
    spec.scenario.k = opts.users;
    spec.scenario.eps.assign(opts.users, 10.0);
    std::vector<McCheckEntry> out;
    for (std::size_t s = 0; s < opts.seeds; ++s) {
        const std::uint64_t seed = opts.first_seed + s;
        const Scenario sc = build_scenario(spec, 0.0, seed);
        const PhaseConfig phase(random_phases(sc.channel.n(), derive_seed(seed, 1)));
        const RateReport cf = closed_form_report(sc.channel, phase, sc.config.power_w, sc.config.noise_w);
        const RateReport mc = monte_carlo_report(sc.channel, phase, sc.config.power_w, sc.config.noise_w,
                                                 {opts.trials, derive_seed(seed, 2), opts.threads});
        for (std::size_t k = 0; k < opts.users; ++k) {
            McCheckEntry e{seed, k, cf.users[k].rate, mc.users[k].rate, mc.users[k].std_error, false};
            e.pass = std::abs(e.closed_form - e.monte_carlo) <= std::max(opts.rel_tol * e.monte_carlo, 3.0 * e.std_error);
            out.push_back(e);
        }
    }
    return out;
}

} // namespace xlris
