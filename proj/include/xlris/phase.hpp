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

#ifndef XLRIS_PHASE_HPP
#define XLRIS_PHASE_HPP

#include "xlris/linalg.hpp"

namespace xlris {

/// RIS phase vector theta (wrapped into [0, 2 pi)) and its unit-modulus
/// diagonal exp{j theta}.
class PhaseConfig {
  public:
    PhaseConfig() = default;
    explicit PhaseConfig(const RVec &theta);

    static PhaseConfig zeros(std::size_t n) { return PhaseConfig(RVec::Zero(static_cast<Eigen::Index>(n))); }

    const RVec &theta() const noexcept { return theta_; }
    /// Diagonal of Phi.
    const CVec &diagonal() const noexcept { return c_; }
    CMat matrix() const { return c_.asDiagonal(); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(theta_.size()); }

  private:
    RVec theta_;
    CVec c_;
};

inline PhaseConfig::PhaseConfig(const RVec &theta) : theta_(theta.size()), c_(theta.size()) {
    for (Eigen::Index n = 0; n < theta.size(); ++n) {
        theta_[n] = wrap_phase(theta[n]);
        c_[n] = std::polar(1.0, theta_[n]);
    }
}

} // namespace xlris

#endif
