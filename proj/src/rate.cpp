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

#include "xlris/rate.hpp"

#include "xlris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xlris {

double noise_term(const StatisticalChannel &stat, const AuxTable &aux, std::size_t k) {
    const TermCoefficients c(stat);
    const double m = static_cast<double>(stat.m());
    const UserAux &u = aux.user[k];
    const double g = aux.pair(k, k).f2.real();
    return c.c1(k, 1, 1) * m * std::norm(u.f) + c.c1(k, 1, 0) * u.f11 + c.c1(k, 0, 1) * g * m + c.c1(k, 0, 0) * u.f31 * m;
}

double signal_term(const StatisticalChannel &stat, const AuxTable &aux, std::size_t k) {
    const TermCoefficients c(stat);
    const double m = static_cast<double>(stat.m());
    const UserAux &u = aux.user[k];
    const PairAux &kk = aux.pair(k, k);
    const double f = std::norm(u.f);
    const double a = u.f11;
    const double g = kk.f2.real();
    const double q = u.f31;

    long double s = 0.0L;
    s += m * m * c.c2(k, 2, 2) * f * f;
    s += c.c2(k, 2, 0) * (kk.f12 + a * a);
    s += c.c2(k, 0, 2) * m * (m + 1) * g * g;
    s += c.c2(k, 0, 0) * m * (m + 1) * (kk.f32 + q * q);
    s += 4 * m * c.c2(k, 2, 1) * f * a;
    s += 2 * m * (m + 1) * c.c2(k, 1, 2) * f * g;
    s += 2 * m * (m + 1) * c.c2(k, 1, 1) * f * q;
    s += 2 * (m + 1) * c.c2(k, 1, 1) * a * g;
    s += 2 * (m + 1) * c.c2(k, 1, 0) * (a * q + kk.f5.real());
    s += 2 * m * (m + 1) * c.c2(k, 0, 1) * g * q;
    s += 2 * m * (m + 1) * c.c2(k, 0, 1) * kk.f4;
    s += 4 * (m + 1) * c.c2(k, 1, 1) * kk.f6.real();
    return static_cast<double>(s);
}

double interference_term(const StatisticalChannel &stat, const AuxTable &aux, std::size_t k, std::size_t i) {
    if (k == i)
        throw std::invalid_argument("interference_term: requires distinct users");
    const TermCoefficients c(stat);
    const double m = static_cast<double>(stat.m());
    const UserAux &uk = aux.user[k];
    const UserAux &ui = aux.user[i];
    const PairAux &ki = aux.pair(k, i);
    const PairAux &ik = aux.pair(i, k);
    const double fk = std::norm(uk.f);
    const double fi = std::norm(ui.f);
    const double gkk = aux.pair(k, k).f2.real();
    const double gii = aux.pair(i, i).f2.real();

    long double s = 0.0L;
    s += c.cc(k, i, 2, 1, 1) * m * m * fk * fi;
    s += c.cc(k, i, 2, 0, 0) * ki.f12;
    s += c.cc(k, i, 0, 1, 1) * (m * gkk * gii + m * m * std::norm(ki.f2));
    s += c.cc(k, i, 0, 0, 0) * m * (uk.f31 * ui.f31 + m * ki.f32);
    s += c.cc(k, i, 1, 1, 1) * m * (fk * gii + fi * gkk);
    s += m * (c.cc(k, i, 2, 1, 0) * fk * ui.f11 + c.cc(k, i, 2, 0, 1) * fi * uk.f11);
    s += c.cc(k, i, 1, 1, 0) * (m * fk * ui.f31 + ui.f11 * gkk);
    s += c.cc(k, i, 1, 0, 1) * (m * fi * uk.f31 + uk.f11 * gii);
    s += c.cc(k, i, 1, 0, 0) * (uk.f11 * ui.f31 + ui.f11 * uk.f31);
    s += c.cc(k, i, 0, 1, 0) * m * (m * ki.f4 + gkk * ui.f31);
    s += c.cc(k, i, 0, 0, 1) * m * (m * ik.f4 + gii * uk.f31);
    s += c.cc(k, i, 1, 1, 1) * m * m * (ki.f7 * ik.f2 + ki.f2 * ik.f7).real();
    s += 2 * c.cc(k, i, 1, 0, 0) * m * ki.f5.real();
    s += 2 * c.cc(k, i, 1, 1, 0) * m * ki.f6.real();
    s += 2 * c.cc(k, i, 1, 0, 1) * m * ik.f6.real();
    return static_cast<double>(s);
}

double noise_term(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k) {
    return noise_term(stat, aux_table(stat, phase), k);
}

double signal_term(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k) {
    return signal_term(stat, aux_table(stat, phase), k);
}

double interference_term(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k, std::size_t i) {
    if (k == i)
        throw std::invalid_argument("interference_term: requires distinct users");
    return interference_term(stat, aux_table(stat, phase), k, i);
}

std::string_view to_string(RateMethod method) {
    switch (method) {
    case RateMethod::ClosedForm:
        return "closed-form";
    case RateMethod::ClosedFormReduced:
        return "closed-form-reduced";
    case RateMethod::MonteCarlo:
        return "monte-carlo";
    }
    return "unknown";
}

std::vector<double> RateReport::rates() const {
    std::vector<double> r;
    r.reserve(users.size());
    for (const auto &u : users)
        r.push_back(u.rate);
    return r;
}

RateReport assemble_report(const StatisticalChannel &stat, const AuxTable &aux, double power, double noise,
                           RateMethod method) {
    RateReport rep;
    rep.method = method;
    rep.users.resize(stat.k());
    for (std::size_t k = 0; k < stat.k(); ++k) {
        UserRate &u = rep.users[k];
        u.e_noise = noise_term(stat, aux, k);
        u.e_signal = signal_term(stat, aux, k);
        for (std::size_t i = 0; i < stat.k(); ++i)
            if (i != k)
                u.i_sum += interference_term(stat, aux, k, i);
        const double denom = power * u.i_sum + noise * u.e_noise;
        if (!(denom > 0.0) || !std::isfinite(denom))
            throw NumericalError("closed-form rate: non-positive SINR denominator");
        u.sinr = power * u.e_signal / denom;
        u.rate = std::log2(1.0 + u.sinr);
    }
    rep.min_rate = std::min_element(rep.users.begin(), rep.users.end(), [](const UserRate &a, const UserRate &b) {
                       return a.rate < b.rate;
                   })->rate;
    return rep;
}

RateReport closed_form_report(const StatisticalChannel &stat, const PhaseConfig &phase, double power, double noise) {
    return assemble_report(stat, aux_table(stat, phase), power, noise, RateMethod::ClosedForm);
}

RateReport closed_form_report_reduced(const ReducedChannel &reduced, const StatisticalChannel &stat, double power,
                                      double noise) {
    if (reduced.users() != stat.k())
        throw std::invalid_argument("closed_form_report_reduced: user count mismatch");
    return assemble_report(stat, aux_table_reduced(reduced), power, noise, RateMethod::ClosedFormReduced);
}

} // namespace xlris
