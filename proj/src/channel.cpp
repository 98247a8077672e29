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

#include "xlris/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace xlris {

namespace {

bool is_rician(double x) { return x >= 0.0 && !std::isnan(x); }

} // namespace

void SystemConfig::validate() const {
    if (m == 0)
        throw std::invalid_argument("M must be positive");
    if (grid.rows == 0 || grid.cols == 0)
        throw std::invalid_argument("N1 and N2 must be positive");
    if (k == 0)
        throw std::invalid_argument("K must be positive");
    if (eps.size() != k)
        throw std::invalid_argument("eps must hold one Rician factor per user");
    for (double e : eps)
        if (!is_rician(e))
            throw std::invalid_argument("eps entries must be non-negative");
    if (!is_rician(delta))
        throw std::invalid_argument("delta must be non-negative");
    const double positives[] = {power_w, noise_w, wavelength, d_bs, d_ris, d_ui, d_ib};
    for (double v : positives)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("powers, distances, spacings and wavelength must be positive and finite");
    if (!std::isfinite(pl_exp_ur) || !std::isfinite(pl_exp_rb))
        throw std::invalid_argument("path-loss exponents must be finite");
}

AngleSet AngleSet::random(std::size_t users, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    AngleSet a;
    a.bs_aoa_az = u(rng);
    a.bs_aoa_el = u(rng);
    a.ris_aod_az = u(rng);
    a.ris_aod_el = u(rng);
    a.user_aoa_az.resize(users);
    a.user_aoa_el.resize(users);
    for (std::size_t k = 0; k < users; ++k) {
        a.user_aoa_az[k] = u(rng);
        a.user_aoa_el[k] = u(rng);
    }
    return a;
}

double rician_ratio(double x, int a, int n) {
    if (std::isinf(x))
        return a == n ? 1.0 : 0.0;
    return std::pow(x / (x + 1.0), a) * std::pow(1.0 / (x + 1.0), n - a);
}

StatisticalChannel StatisticalChannel::build(const SystemConfig &cfg, const AngleSet &angles,
                                             std::vector<VisibilityRegion> vrs) {
    cfg.validate();
    if (vrs.size() != cfg.k)
        throw std::invalid_argument("build_statistical_channel: need one visibility region per user");
    if (angles.user_aoa_az.size() != cfg.k || angles.user_aoa_el.size() != cfg.k)
        throw std::invalid_argument("build_statistical_channel: need one angle pair per user");
    for (const auto &vr : vrs)
        if (vr.element_count() != cfg.n())
            throw std::invalid_argument("build_statistical_channel: visibility region size mismatch");

    StatisticalChannel s;
    s.m_ = cfg.m;
    s.grid_ = cfg.grid;
    s.a_m_ = array_response_ula(cfg.m, angles.bs_aoa_az, angles.bs_aoa_el, cfg.d_bs / cfg.wavelength);
    s.a_n_ = array_response_uspa(cfg.grid, angles.ris_aod_az, angles.ris_aod_el, cfg.d_ris / cfg.wavelength);
    s.r_ris_ = correlation_matrix(cfg.grid, cfg.d_ris, cfg.wavelength);
    s.r_ris_sqrt_ = sym_sqrt(s.r_ris_);

    const auto n = static_cast<Eigen::Index>(cfg.n());
    for (std::size_t k = 0; k < cfg.k; ++k) {
        s.hbar_.push_back(array_response_uspa(cfg.grid, angles.user_aoa_az[k], angles.user_aoa_el[k], cfg.d_ris / cfg.wavelength));
        s.r_vr_.push_back(vr_covariance(s.r_ris_, vrs[k]));
        // R_VR,k is block-diagonal (visible block, zeros), so its root is the
        // root of the visible block embedded back
        const auto idx = vrs[k].indices();
        const RMat block_root = sym_sqrt(gather(s.r_ris_, idx, idx));
        RMat root = RMat::Zero(n, n);
        for (std::size_t q = 0; q < idx.size(); ++q)
            for (std::size_t p = 0; p < idx.size(); ++p)
                root(idx[p], idx[q]) = block_root(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        s.r_vr_sqrt_.push_back(std::move(root));
        s.alpha_.push_back(path_loss(cfg.d_ui, cfg.pl_exp_ur));
    }
    s.vrs_ = std::move(vrs);
    s.beta_ = path_loss(cfg.d_ib, cfg.pl_exp_rb);
    s.delta_ = cfg.delta;
    s.eps_ = cfg.eps;
    return s;
}

CVec complex_gaussian(Eigen::Index n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        v[i] = {re, im};
    }
    return v;
}

CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CMat h(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double re = g(rng);
            const double im = g(rng);
            h(r, c) = {re, im};
        }
    return h;
}

ChannelRealization sample_realization(const StatisticalChannel &stat, std::mt19937_64 &rng) {
    const auto n = static_cast<Eigen::Index>(stat.n());
    const auto m = static_cast<Eigen::Index>(stat.m());
    ChannelRealization out;
    out.htilde2 = complex_gaussian(m, n, rng);
    const double los_b = std::sqrt(rician_ratio(stat.delta(), 1, 1));
    const double nlos_b = std::sqrt(rician_ratio(stat.delta(), 0, 1));
    out.h2.noalias() = los_b * stat.hbar2();
    if (nlos_b > 0.0)
        out.h2.noalias() += nlos_b * (out.htilde2 * stat.r_ris_sqrt().cast<cdouble>());
    out.h2 *= std::sqrt(stat.beta());

    for (std::size_t k = 0; k < stat.k(); ++k) {
        out.htilde.push_back(complex_gaussian(n, rng));
        const double los = std::sqrt(rician_ratio(stat.eps(k), 1, 1));
        const double nlos = std::sqrt(rician_ratio(stat.eps(k), 0, 1));
        CVec h = los * stat.vr(k).mask().cast<cdouble>().cwiseProduct(stat.hbar(k));
        if (nlos > 0.0)
            h.noalias() += nlos * (stat.r_vr_sqrt(k).cast<cdouble>() * out.htilde.back());
        out.h.push_back(std::sqrt(stat.alpha(k)) * h);
    }
    return out;
}

CVec cascaded_channel(const CMat &h2, const PhaseConfig &phase, const CVec &h_k) {
    if (h2.cols() != static_cast<Eigen::Index>(phase.size()) || h_k.size() != h2.cols())
        throw std::invalid_argument("cascaded_channel: dimension mismatch");
    return h2 * phase.diagonal().cwiseProduct(h_k);
}

} // namespace xlris
