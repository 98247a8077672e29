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

#ifndef XLRIS_CHANNEL_HPP
#define XLRIS_CHANNEL_HPP

#include "xlris/geometry.hpp"
#include "xlris/linalg.hpp"
#include "xlris/phase.hpp"
#include "xlris/visibility.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace xlris {

/// Scenario scalars. Powers in watts, lengths in meters. A Rician factor of
/// +infinity selects the pure line-of-sight limit of that link.
struct SystemConfig {
    std::size_t m = 64;
    RisGrid grid{10, 20};
    std::size_t k = 4;
    double power_w = dbm_to_watt(30.0);
    double noise_w = dbm_to_watt(-104.0);
    double wavelength = 0.1;
    double d_bs = 0.05;
    double d_ris = 0.05;
    double delta = 1.0;
    std::vector<double> eps = std::vector<double>(4, 10.0);
    double d_ui = 15.0;
    double d_ib = 800.0;
    double pl_exp_ur = 2.0;
    double pl_exp_rb = 2.5;
    std::uint64_t seed = 1;

    std::size_t n() const noexcept { return grid.size(); }
    /// Throws std::invalid_argument on the first violated invariant.
    void validate() const;
};

/// Angles of the line-of-sight components, radians in [0, 2 pi).
struct AngleSet {
    double bs_aoa_az = 0.0;  // at the BS, from the RIS
    double bs_aoa_el = 0.0;
    double ris_aod_az = 0.0; // at the RIS, toward the BS
    double ris_aod_el = 0.0;
    std::vector<double> user_aoa_az; // at the RIS, from each user
    std::vector<double> user_aoa_el;

    static AngleSet random(std::size_t users, std::mt19937_64 &rng);
};

/// x^a / (x + 1)^n for a Rician factor x >= 0, including x = +inf.
double rician_ratio(double x, int a, int n);

/// Statistical CSI of one scenario. Immutable once built.
class StatisticalChannel {
  public:
    static StatisticalChannel build(const SystemConfig &cfg, const AngleSet &angles, std::vector<VisibilityRegion> vrs);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return static_cast<std::size_t>(a_n_.size()); }
    std::size_t k() const noexcept { return hbar_.size(); }
    const RisGrid &grid() const noexcept { return grid_; }

    /// BS response a_M; the RIS-BS line-of-sight matrix is a_M a_N^H.
    const CVec &a_m() const noexcept { return a_m_; }
    const CVec &a_n() const noexcept { return a_n_; }
    CMat hbar2() const { return a_m_ * a_n_.adjoint(); }
    const CVec &hbar(std::size_t k) const { return hbar_.at(k); }

    const RMat &r_ris() const noexcept { return r_ris_; }
    const RMat &r_ris_sqrt() const noexcept { return r_ris_sqrt_; }
    const VisibilityRegion &vr(std::size_t k) const { return vrs_.at(k); }
    const RMat &r_vr(std::size_t k) const { return r_vr_.at(k); }
    const RMat &r_vr_sqrt(std::size_t k) const { return r_vr_sqrt_.at(k); }

    double alpha(std::size_t k) const { return alpha_.at(k); }
    double beta() const noexcept { return beta_; }
    double delta() const noexcept { return delta_; }
    double eps(std::size_t k) const { return eps_.at(k); }

    /// beta * alpha_k / ((delta + 1)(eps_k + 1)); zero in either LoS limit.
    double c(std::size_t k) const { return beta_ * alpha_.at(k) * rician_ratio(delta_, 0, 1) * rician_ratio(eps_.at(k), 0, 1); }
    /// beta * alpha_k, the scale shared by every c_k delta^a eps^b product.
    double gain(std::size_t k) const { return beta_ * alpha_.at(k); }

  private:
    StatisticalChannel() = default;

    std::size_t m_ = 0;
    RisGrid grid_;
    CVec a_m_;
    CVec a_n_;
    std::vector<CVec> hbar_;
    RMat r_ris_;
    RMat r_ris_sqrt_;
    std::vector<VisibilityRegion> vrs_;
    std::vector<RMat> r_vr_;
    std::vector<RMat> r_vr_sqrt_;
    std::vector<double> alpha_;
    double beta_ = 0.0;
    double delta_ = 0.0;
    std::vector<double> eps_;
};

/// One draw of the small-scale fading.
struct ChannelRealization {
    std::vector<CVec> htilde; // NLoS user-RIS components, CN(0, I_N)
    CMat htilde2;             // NLoS RIS-BS component, CN(0, 1) entries
    std::vector<CVec> h;      // composite user-RIS channels
    CMat h2;                  // composite RIS-BS channel
};

/// Circularly-symmetric CN(0, 1) samples.
CVec complex_gaussian(Eigen::Index n, std::mt19937_64 &rng);
CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng);

ChannelRealization sample_realization(const StatisticalChannel &stat, std::mt19937_64 &rng);

/// q_k = H2 diag(e^{j theta}) h_k.
CVec cascaded_channel(const CMat &h2, const PhaseConfig &phase, const CVec &h_k);

} // namespace xlris

#endif
