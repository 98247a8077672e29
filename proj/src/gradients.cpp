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

#include "xlris/gradients.hpp"

#include "xlris/errors.hpp"
#include "xlris/rate.hpp"
#include "xlris/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace xlris {

CVec grad_f_a_complex(const CMat &a, const CMat &b, const PhaseConfig &phase) {
    const auto n = static_cast<Eigen::Index>(phase.size());
    if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
        throw std::invalid_argument("grad_f_a: matrices must be N x N");
    const CVec &c = phase.diagonal();
    const CMat s = c.asDiagonal() * b * c.conjugate().asDiagonal();
    return kJ * ((s.cwiseProduct(a.transpose())).rowwise().sum() - (a.cwiseProduct(s.transpose())).rowwise().sum());
}

RVec grad_f_a(const CMat &a, const CMat &b, const PhaseConfig &phase) {
    const CVec g = grad_f_a_complex(a, b, phase);
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if (g.size() > 0 && g.imag().cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw NumericalError("grad_f_a: gradient has a non-negligible imaginary part");
    return g.real();
}

namespace {

CMat rotate(const RMat &v, const CVec &c) { return c.asDiagonal() * v.cast<cdouble>() * c.conjugate().asDiagonal(); }

template <class Full, class Local> void scatter_add(Full &full, const IndexList &idx, const Local &local) {
    for (std::size_t p = 0; p < idx.size(); ++p)
        full[idx[p]] += local[static_cast<Eigen::Index>(p)];
}

// 2 Im{diag(X Y)} for X, Y given explicitly.
RVec two_im_diag(const CMat &x, const CMat &y) { return 2.0 * x.cwiseProduct(y.transpose()).rowwise().sum().imag(); }

} // namespace

AuxGradTable aux_grad_table(const ReducedChannel &red, std::size_t n_total) {
    const std::size_t users = red.users();
    const double m = static_cast<double>(red.m);
    const auto n = static_cast<Eigen::Index>(n_total);

    std::vector<CVec> g(users), pa(users);
    std::vector<CMat> p(users);
    std::vector<cdouble> f(users);
    std::vector<double> f11(users);
    for (std::size_t k = 0; k < users; ++k) {
        g[k] = red.phi[k].cwiseProduct(red.hbar[k]);
        p[k] = rotate(red.r_vr[k], red.phi[k]);
        pa[k] = p[k] * red.a_n[k];
        f[k] = red.a_n[k].dot(g[k]);
        f11[k] = m * red.a_n[k].dot(pa[k]).real();
    }
    // y[k * K + i] = R_i*k* P_k*
    std::vector<CMat> y(users * users);
    for (std::size_t k = 0; k < users; ++k)
        for (std::size_t i = 0; i < users; ++i)
            y[k * users + i] = red.r_cross(i, k).cast<cdouble>() * p[k];
    auto y_of = [&](std::size_t to, std::size_t from) -> const CMat & { return y[from * users + to]; };

    AuxGradTable t;
    t.users = users;
    t.user.resize(users);
    t.pairs.resize(users * users);
    for (std::size_t k = 0; k < users; ++k) {
        const IndexList &sk = red.nu[k];
        UserAuxGrad &u = t.user[k];
        u.f = CVec::Zero(n);
        u.f11 = RVec::Zero(n);
        u.f31 = RVec::Zero(n);
        scatter_add(u.f, sk, CVec(kJ * red.a_n[k].conjugate().cwiseProduct(g[k])));
        scatter_add(u.f11, sk, RVec(2.0 * m * red.a_n[k].cwiseProduct(pa[k].conjugate()).imag()));
        scatter_add(u.f31, sk, two_im_diag(red.r_cross(k, k).cast<cdouble>(), p[k]));
    }

    for (std::size_t k = 0; k < users; ++k) {
        const IndexList &sk = red.nu[k];
        for (std::size_t i = 0; i < users; ++i) {
            const IndexList &si = red.nu[i];
            const CMat r_ki = red.r_cross(k, i).cast<cdouble>();
            const CMat r_ik = red.r_cross(i, k).cast<cdouble>();
            PairAuxGrad &v = t.pair(k, i);
            v.f2 = CVec::Zero(n);
            v.f32 = RVec::Zero(n);
            v.f4 = RVec::Zero(n);
            v.f5 = CVec::Zero(n);
            v.f6 = CVec::Zero(n);

            v.f12 = t.user[k].f11 * f11[i] + f11[k] * t.user[i].f11;
            v.f7 = t.user[k].f.conjugate() * f[i] + std::conj(f[k]) * t.user[i].f;

            const CVec u = r_ik * g[k];
            scatter_add(v.f2, si, CVec(kJ * u.conjugate().cwiseProduct(g[i])));
            scatter_add(v.f2, sk, CVec(-kJ * g[k].conjugate().cwiseProduct(r_ki * g[i])));

            scatter_add(v.f32, sk, two_im_diag(y_of(k, i), y_of(i, k)));
            scatter_add(v.f32, si, two_im_diag(y_of(i, k), y_of(k, i)));

            const CVec pu = p[i] * u;
            const CVec wg = r_ki * pu;
            scatter_add(v.f4, si, RVec(2.0 * u.cwiseProduct(pu.conjugate()).imag()));
            scatter_add(v.f4, sk, RVec(2.0 * wg.cwiseProduct(g[k].conjugate()).imag()));

            const CVec w = r_ki * pa[i];
            const CVec x = r_ik * pa[k];
            scatter_add(v.f5, sk,
                        CVec(kJ * m *
                             (red.a_n[k].conjugate().cwiseProduct(p[k] * w) - w.cwiseProduct(pa[k].conjugate()))));
            scatter_add(v.f5, si,
                        CVec(kJ * m * (x.conjugate().cwiseProduct(pa[i]) - red.a_n[i].cwiseProduct((p[i] * x).conjugate()))));

            // f6 = M conj(f_k) h with h = pa_i^H u
            const cdouble h = pa[i].dot(u);
            CVec dh = CVec::Zero(n);
            scatter_add(dh, si, CVec(kJ * (red.a_n[i].conjugate().cwiseProduct(pu) - u.cwiseProduct(pa[i].conjugate()))));
            scatter_add(dh, sk, CVec(kJ * w.conjugate().cwiseProduct(g[k])));
            v.f6 = m * (t.user[k].f.conjugate() * h + std::conj(f[k]) * dh);
        }
    }
    return t;
}

AuxGradTable aux_grad_table(const StatisticalChannel &stat, const PhaseConfig &phase) {
    return aux_grad_table(reduce(stat, phase), stat.n());
}

AuxGradients aux_gradients(const AuxGradTable &t, std::size_t k, std::size_t i) {
    if (k >= t.users || i >= t.users)
        throw std::invalid_argument("aux_gradients: user index out of range");
    const UserAuxGrad &u = t.user[k];
    const PairAuxGrad &ki = t.pair(k, i);
    const PairAuxGrad &ik = t.pair(i, k);
    auto cx = [](const RVec &r) -> CVec { return r.cast<cdouble>(); };
    return {u.f,   cx(u.f11), cx(ki.f12), ki.f2,  cx(u.f31), cx(ki.f32),          cx(ki.f4),
            cx(ik.f4), ki.f5, ik.f5,      ki.f6,  ik.f6,     ik.f6.conjugate(), ki.f7};
}

AuxGradients aux_gradients(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k, std::size_t i) {
    return aux_gradients(aux_grad_table(stat, phase), k, i);
}

namespace {

// |z|^2 and Re{a b} derivatives.
RVec d_norm(cdouble z, const CVec &dz) { return 2.0 * (std::conj(z) * dz).real(); }
RVec d_re_prod(cdouble a, const CVec &da, cdouble b, const CVec &db) { return (da * b + a * db).real(); }

} // namespace

RVec grad_noise(const StatisticalChannel &stat, const AuxTable &aux, const AuxGradTable &grad, std::size_t k) {
    const TermCoefficients c(stat);
    const double m = static_cast<double>(stat.m());
    const UserAuxGrad &u = grad.user[k];
    return c.c1(k, 1, 1) * m * d_norm(aux.user[k].f, u.f) + c.c1(k, 1, 0) * u.f11 +
           c.c1(k, 0, 1) * m * grad.pair(k, k).f2.real() + c.c1(k, 0, 0) * m * u.f31;
}

RVec grad_signal(const StatisticalChannel &stat, const AuxTable &aux, const AuxGradTable &grad, std::size_t k) {
    const TermCoefficients c(stat);
    const double m = static_cast<double>(stat.m());
    const UserAux &u = aux.user[k];
    const PairAux &kk = aux.pair(k, k);
    const UserAuxGrad &du = grad.user[k];
    const PairAuxGrad &dkk = grad.pair(k, k);

    const double f = std::norm(u.f);
    const double a = u.f11;
    const double g = kk.f2.real();
    const double q = u.f31;
    const RVec df = d_norm(u.f, du.f);
    const RVec &da = du.f11;
    const RVec dg = dkk.f2.real();
    const RVec &dq = du.f31;

    RVec s = m * m * c.c2(k, 2, 2) * 2.0 * f * df;
    s += c.c2(k, 2, 0) * (dkk.f12 + 2.0 * a * da);
    s += c.c2(k, 0, 2) * m * (m + 1) * 2.0 * g * dg;
    s += c.c2(k, 0, 0) * m * (m + 1) * (dkk.f32 + 2.0 * q * dq);
    s += 4 * m * c.c2(k, 2, 1) * (df * a + f * da);
    s += 2 * m * (m + 1) * c.c2(k, 1, 2) * (df * g + f * dg);
    s += 2 * m * (m + 1) * c.c2(k, 1, 1) * (df * q + f * dq);
    s += 2 * (m + 1) * c.c2(k, 1, 1) * (da * g + a * dg);
    s += 2 * (m + 1) * c.c2(k, 1, 0) * (da * q + a * dq + dkk.f5.real());
    s += 2 * m * (m + 1) * c.c2(k, 0, 1) * (dg * q + g * dq);
    s += 2 * m * (m + 1) * c.c2(k, 0, 1) * dkk.f4;
    s += 4 * (m + 1) * c.c2(k, 1, 1) * dkk.f6.real();
    return s;
}

RVec grad_interference(const StatisticalChannel &stat, const AuxTable &aux, const AuxGradTable &grad, std::size_t k,
                       std::size_t i) {
    if (k == i)
        throw std::invalid_argument("grad_interference: requires distinct users");
    const TermCoefficients c(stat);
    const double m = static_cast<double>(stat.m());
    const UserAux &uk = aux.user[k];
    const UserAux &ui = aux.user[i];
    const PairAux &ki = aux.pair(k, i);
    const PairAux &ik = aux.pair(i, k);
    const UserAuxGrad &duk = grad.user[k];
    const UserAuxGrad &dui = grad.user[i];
    const PairAuxGrad &dki = grad.pair(k, i);
    const PairAuxGrad &dik = grad.pair(i, k);

    const double fk = std::norm(uk.f), fi = std::norm(ui.f);
    const RVec dfk = d_norm(uk.f, duk.f), dfi = d_norm(ui.f, dui.f);
    const double gkk = aux.pair(k, k).f2.real(), gii = aux.pair(i, i).f2.real();
    const RVec dgkk = grad.pair(k, k).f2.real(), dgii = grad.pair(i, i).f2.real();
    const double ak = uk.f11, ai = ui.f11, qk = uk.f31, qi = ui.f31;
    const RVec &dak = duk.f11, &dai = dui.f11, &dqk = duk.f31, &dqi = dui.f31;

    RVec s = c.cc(k, i, 2, 1, 1) * m * m * (dfk * fi + fk * dfi);
    s += c.cc(k, i, 2, 0, 0) * dki.f12;
    s += c.cc(k, i, 0, 1, 1) * (m * (dgkk * gii + gkk * dgii) + m * m * d_norm(ki.f2, dki.f2));
    s += c.cc(k, i, 0, 0, 0) * m * (dqk * qi + qk * dqi + m * dki.f32);
    s += c.cc(k, i, 1, 1, 1) * m * (dfk * gii + fk * dgii + dfi * gkk + fi * dgkk);
    s += m * (c.cc(k, i, 2, 1, 0) * (dfk * ai + fk * dai) + c.cc(k, i, 2, 0, 1) * (dfi * ak + fi * dak));
    s += c.cc(k, i, 1, 1, 0) * (m * (dfk * qi + fk * dqi) + dai * gkk + ai * dgkk);
    s += c.cc(k, i, 1, 0, 1) * (m * (dfi * qk + fi * dqk) + dak * gii + ak * dgii);
    s += c.cc(k, i, 1, 0, 0) * (dak * qi + ak * dqi + dai * qk + ai * dqk);
    s += c.cc(k, i, 0, 1, 0) * m * (m * dki.f4 + dgkk * qi + gkk * dqi);
    s += c.cc(k, i, 0, 0, 1) * m * (m * dik.f4 + dgii * qk + gii * dqk);
    s += c.cc(k, i, 1, 1, 1) * m * m * (d_re_prod(ki.f7, dki.f7, ik.f2, dik.f2) + d_re_prod(ki.f2, dki.f2, ik.f7, dik.f7));
    s += 2 * c.cc(k, i, 1, 0, 0) * m * dki.f5.real();
    s += 2 * c.cc(k, i, 1, 1, 0) * m * dki.f6.real();
    s += 2 * c.cc(k, i, 1, 0, 1) * m * dik.f6.real();
    return s;
}

TermGradients grad_terms(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k, std::size_t i) {
    if (k >= stat.k() || i >= stat.k())
        throw std::invalid_argument("grad_terms: user index out of range");
    const ReducedChannel red = reduce(stat, phase);
    const AuxTable aux = aux_table_reduced(red);
    const AuxGradTable grad = aux_grad_table(red, stat.n());
    TermGradients out;
    out.noise = grad_noise(stat, aux, grad, k);
    out.signal = grad_signal(stat, aux, grad, k);
    out.interference = k == i ? RVec::Zero(static_cast<Eigen::Index>(stat.n())) : grad_interference(stat, aux, grad, k, i);
    return out;
}

ObjectiveEval objective_with_gradient(const ReducedChannel &red, const StatisticalChannel &stat, double power,
                                      double noise, double mu) {
    if (red.users() != stat.k())
        throw std::invalid_argument("objective_with_gradient: user count mismatch");
    const AuxTable aux = aux_table_reduced(red);
    const AuxGradTable grad = aux_grad_table(red, stat.n());
    const RateReport rep = assemble_report(stat, aux, power, noise, RateMethod::ClosedFormReduced);

    ObjectiveEval ev;
    ev.rates = rep.rates();
    ev.min_rate = rep.min_rate;
    ev.value = smoothed_min(ev.rates, mu);
    const std::vector<double> w = softmin_weights(ev.rates, mu);
    ev.gradient = RVec::Zero(static_cast<Eigen::Index>(stat.n()));
    for (std::size_t k = 0; k < stat.k(); ++k) {
        const UserRate &u = rep.users[k];
        RVec d_inter = RVec::Zero(ev.gradient.size());
        for (std::size_t i = 0; i < stat.k(); ++i)
            if (i != k)
                d_inter += grad_interference(stat, aux, grad, k, i);
        const double den = power * u.i_sum + noise * u.e_noise;
        const RVec d_den = power * d_inter + noise * grad_noise(stat, aux, grad, k);
        const RVec d_sinr = (power * grad_signal(stat, aux, grad, k) - u.sinr * d_den) / den;
        ev.gradient += (w[k] / (std::log(2.0) * (1.0 + u.sinr))) * d_sinr;
    }
    if (!ev.gradient.allFinite() || !std::isfinite(ev.value))
        throw NumericalError("objective gradient is not finite");
    return ev;
}

RVec grad_objective(const StatisticalChannel &stat, const PhaseConfig &phase, double power, double noise, double mu) {
    return objective_with_gradient(reduce(stat, phase), stat, power, noise, mu).gradient;
}

} // namespace xlris
