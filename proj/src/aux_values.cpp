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

#include "xlris/aux_values.hpp"

#include <stdexcept>

namespace xlris {

namespace {

// P = diag(c) V diag(c)^H
CMat rotate(const RMat &v, const CVec &c) {
    CMat p(v.rows(), v.cols());
    for (Eigen::Index q = 0; q < v.cols(); ++q)
        for (Eigen::Index r = 0; r < v.rows(); ++r)
            p(r, q) = c[r] * v(r, q) * std::conj(c[q]);
    return p;
}

void check_users(std::size_t users, std::size_t k, std::size_t i) {
    if (k >= users || i >= users)
        throw std::invalid_argument("aux_values: user index out of range");
}

} // namespace

AuxTable aux_table(const StatisticalChannel &stat, const PhaseConfig &phase) {
    if (phase.size() != stat.n())
        throw std::invalid_argument("aux_table: phase vector length must equal N");
    const std::size_t users = stat.k();
    const double m = static_cast<double>(stat.m());
    const CVec &a = stat.a_n();
    const CVec &c = phase.diagonal();
    const CMat r = stat.r_ris().cast<cdouble>();

    std::vector<CVec> g(users), rg(users), pa(users), rpa(users);
    std::vector<CMat> p(users), y(users);
    AuxTable t;
    t.users = users;
    t.user.resize(users);
    t.pairs.resize(users * users);
    for (std::size_t k = 0; k < users; ++k) {
        g[k] = c.cwiseProduct(stat.vr(k).mask().cast<cdouble>()).cwiseProduct(stat.hbar(k));
        rg[k] = r * g[k];
        p[k] = rotate(stat.r_vr(k), c);
        pa[k] = p[k] * a;
        rpa[k] = r * pa[k];
        y[k] = r * p[k];
        t.user[k].f = a.dot(g[k]);
        t.user[k].f11 = m * a.dot(pa[k]).real();
        t.user[k].f31 = y[k].trace().real();
    }
    for (std::size_t k = 0; k < users; ++k) {
        for (std::size_t i = 0; i < users; ++i) {
            PairAux &v = t.pair(k, i);
            v.f12 = t.user[k].f11 * t.user[i].f11;
            v.f2 = g[k].dot(rg[i]);
            v.f32 = y[k].cwiseProduct(y[i].transpose()).sum().real();
            v.f4 = rg[k].dot(p[i] * rg[k]).real();
            v.f5 = m * pa[k].dot(rpa[i]);
            v.f6 = m * std::conj(t.user[k].f) * pa[i].dot(rg[k]);
            v.f7 = std::conj(t.user[k].f) * t.user[i].f;
        }
    }
    return t;
}

AuxValues aux_values(const AuxTable &t, std::size_t k, std::size_t i) {
    check_users(t.users, k, i);
    const PairAux &v = t.pair(k, i);
    return {t.user[k].f, t.user[k].f11, v.f12, v.f2, t.user[k].f31, v.f32, v.f4, v.f5, v.f6, v.f7};
}

AuxValues aux_values(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k, std::size_t i) {
    check_users(stat.k(), k, i);
    return aux_values(aux_table(stat, phase), k, i);
}

ReducedChannel reduce(const StatisticalChannel &stat, const PhaseConfig &phase) {
    if (phase.size() != stat.n())
        throw std::invalid_argument("reduce: phase vector length must equal N");
    const std::size_t users = stat.k();
    ReducedChannel red;
    red.m = stat.m();
    red.a_m = stat.a_m();
    for (std::size_t k = 0; k < users; ++k) {
        const auto idx = stat.vr(k).indices();
        red.nu.emplace_back(idx.begin(), idx.end());
        red.a_n.push_back(gather(stat.a_n(), idx));
        red.hbar.push_back(gather(stat.hbar(k), idx));
        red.phi.push_back(gather(phase.diagonal(), idx));
        red.r_vr.push_back(gather(stat.r_vr(k), idx, idx));
    }
    for (std::size_t k = 0; k < users; ++k)
        for (std::size_t i = 0; i < users; ++i)
            red.r_ris.push_back(gather(stat.r_ris(), red.nu[k], red.nu[i]));
    return red;
}

void update_phase(ReducedChannel &reduced, const PhaseConfig &phase) {
    for (std::size_t k = 0; k < reduced.users(); ++k)
        reduced.phi[k] = gather(phase.diagonal(), reduced.nu[k]);
}

AuxTable aux_table_reduced(const ReducedChannel &red) {
    const std::size_t users = red.users();
    const double m = static_cast<double>(red.m);

    std::vector<CVec> g(users), pa(users);
    std::vector<CMat> p(users);
    AuxTable t;
    t.users = users;
    t.user.resize(users);
    t.pairs.resize(users * users);
    for (std::size_t k = 0; k < users; ++k) {
        g[k] = red.phi[k].cwiseProduct(red.hbar[k]);
        p[k] = rotate(red.r_vr[k], red.phi[k]);
        pa[k] = p[k] * red.a_n[k];
        t.user[k].f = red.a_n[k].dot(g[k]);
        t.user[k].f11 = m * red.a_n[k].dot(pa[k]).real();
        t.user[k].f31 = red.r_vr[k].cast<cdouble>().cwiseProduct(p[k]).sum().real();
    }
    // z[k * K + i] = R_ris,i*,k* P_k*
    std::vector<CMat> z(users * users);
    for (std::size_t k = 0; k < users; ++k)
        for (std::size_t i = 0; i < users; ++i)
            z[k * users + i] = red.r_cross(i, k).cast<cdouble>() * p[k];

    for (std::size_t k = 0; k < users; ++k) {
        for (std::size_t i = 0; i < users; ++i) {
            PairAux &v = t.pair(k, i);
            const CMat r_ki = red.r_cross(k, i).cast<cdouble>();
            const CVec u = red.r_cross(i, k).cast<cdouble>() * g[k]; // R_i*k* g_k*
            v.f12 = t.user[k].f11 * t.user[i].f11;
            v.f2 = g[k].dot(r_ki * g[i]);
            v.f32 = z[k * users + i].cwiseProduct(z[i * users + k].transpose()).sum().real();
            v.f4 = u.dot(p[i] * u).real();
            v.f5 = m * pa[k].dot(r_ki * pa[i]);
            v.f6 = m * std::conj(t.user[k].f) * pa[i].dot(u);
            v.f7 = std::conj(t.user[k].f) * t.user[i].f;
        }
    }
    return t;
}

} // namespace xlris
