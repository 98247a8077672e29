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

// Reference implementations used only by the tests. They evaluate every
// quantity with dense N x N and M x N matrices, the way the formulas read,
// without any of the rank-one or visibility-region shortcuts of the library.

#ifndef XLRIS_TESTS_ORACLES_HPP
#define XLRIS_TESTS_ORACLES_HPP

#include "xlris/channel.hpp"
#include "xlris/geometry.hpp"
#include "xlris/phase.hpp"
#include "xlris/visibility.hpp"

#include <functional>
#include <random>
#include <vector>

namespace oracle {

using xlris::cdouble;
using xlris::CMat;
using xlris::CVec;
using xlris::RMat;
using xlris::RVec;

struct DenseAux {
    cdouble f_k, f_k11, f_ki12, f_ki2, f_k31, f_ki32, f_ki4, f_ki5, f_ki6, f_ki7;
};

inline CMat mask_matrix(const xlris::VisibilityRegion &vr) { return vr.mask().cast<cdouble>().asDiagonal(); }

inline DenseAux dense_aux(const xlris::StatisticalChannel &s, const RVec &theta, std::size_t k, std::size_t i) {
    const CMat phi = xlris::PhaseConfig(theta).matrix();
    const CMat h2 = s.a_m() * s.a_n().adjoint();
    const CMat dk = mask_matrix(s.vr(k));
    const CMat di = mask_matrix(s.vr(i));
    const CMat r = s.r_ris().cast<cdouble>();
    const CMat rk = dk * r * dk;
    const CMat ri = di * r * di;
    const CVec hk = s.hbar(k);
    const CVec hi = s.hbar(i);
    const CMat x = h2.adjoint() * h2;
    const CMat pk = phi * rk * phi.adjoint();
    const CMat pi = phi * ri * phi.adjoint();
    const CVec gk = phi * dk * hk;
    const CVec gi = phi * di * hi;
    DenseAux a;
    a.f_k = (s.a_n().adjoint() * gk)(0, 0);
    a.f_k11 = (h2 * phi * rk * phi.adjoint() * h2.adjoint()).trace();
    a.f_ki12 = (h2 * phi * rk * phi.adjoint() * h2.adjoint()).trace() * (h2 * phi * ri * phi.adjoint() * h2.adjoint()).trace();
    a.f_ki2 = (gk.adjoint() * r * gi)(0, 0);
    a.f_k31 = (r * pk).trace();
    a.f_ki32 = (r * pk * r * pi).trace();
    a.f_ki4 = (gk.adjoint() * r * pi * r * gk)(0, 0);
    a.f_ki5 = (x * pk * r * pi).trace();
    a.f_ki6 = (gk.adjoint() * x * pi * r * gk)(0, 0);
    a.f_ki7 = (gk.adjoint() * s.a_n() * s.a_n().adjoint() * gi)(0, 0);
    return a;
}

/// Instantaneous q_k = H2 Phi h_k from explicitly composed channels.
inline std::vector<CVec> dense_cascade(const xlris::StatisticalChannel &s, const RVec &theta, std::mt19937_64 &rng) {
    const auto n = static_cast<Eigen::Index>(s.n());
    const auto m = static_cast<Eigen::Index>(s.m());
    auto gauss = [&](Eigen::Index rows, Eigen::Index cols) {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        CMat out(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index q = 0; q < rows; ++q) {
                const double re = g(rng);
                const double im = g(rng);
                out(q, c) = {re, im};
            }
        return out;
    };
    const double d = s.delta();
    const CMat h2 = std::sqrt(s.beta()) * (std::sqrt(d / (d + 1)) * s.a_m() * s.a_n().adjoint() +
                                           std::sqrt(1 / (d + 1)) * gauss(m, n) * s.r_ris_sqrt().cast<cdouble>());
    const CMat phi = xlris::PhaseConfig(theta).matrix();
    std::vector<CVec> q;
    for (std::size_t k = 0; k < s.k(); ++k) {
        const double e = s.eps(k);
        const CVec h = std::sqrt(s.alpha(k)) * (std::sqrt(e / (e + 1)) * mask_matrix(s.vr(k)) * s.hbar(k) +
                                                std::sqrt(1 / (e + 1)) * s.r_vr_sqrt(k).cast<cdouble>() * gauss(n, 1));
        q.push_back(h2 * phi * h);
    }
    return q;
}

inline RVec central_difference(const std::function<double(const RVec &)> &f, const RVec &theta, double h = 1e-6) {
    RVec g(theta.size());
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
        RVec a = theta, b = theta;
        a[j] += h;
        b[j] -= h;
        g[j] = (f(a) - f(b)) / (2.0 * h);
    }
    return g;
}

/// max |a - b| / max(||b||_inf, floor).
inline double max_rel(const RVec &a, const RVec &b, double floor = 1e-8) {
    return (a - b).lpNorm<Eigen::Infinity>() / std::max(b.lpNorm<Eigen::Infinity>(), floor);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Instance {
    xlris::SystemConfig cfg;
    xlris::StatisticalChannel stat;
    RVec theta;
};

/// Random small scenario with random Rician factors, spacing and regions.
inline Instance random_instance(std::size_t n1, std::size_t n2, std::size_t m, std::size_t users, std::uint64_t seed,
                                bool full_vr = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    xlris::SystemConfig cfg;
    cfg.m = m;
    cfg.grid = {n1, n2};
    cfg.k = users;
    cfg.delta = 4.0 * u(rng);
    cfg.eps.clear();
    for (std::size_t k = 0; k < users; ++k)
        cfg.eps.push_back(6.0 * u(rng));
    cfg.d_ris = cfg.wavelength * (0.2 + 0.4 * u(rng));
    cfg.d_bs = cfg.wavelength * 0.5;
    const auto angles = xlris::AngleSet::random(users, rng);
    std::vector<xlris::VisibilityRegion> vrs;
    if (full_vr || (n1 < users && n2 < users)) {
        vrs.assign(users, xlris::VisibilityRegion::full(cfg.n()));
    } else {
        xlris::RandomVrSpec spec;
        spec.overlap = u(rng);
        vrs = xlris::build_random_vrs(spec, cfg.grid, users, rng);
    }
    RVec theta(static_cast<Eigen::Index>(cfg.n()));
    for (Eigen::Index j = 0; j < theta.size(); ++j)
        theta[j] = xlris::kTwoPi * u(rng);
    return {cfg, xlris::StatisticalChannel::build(cfg, angles, vrs), theta};
}

} // namespace oracle

#endif
