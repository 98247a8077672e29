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

#ifndef XLRIS_MONTE_CARLO_HPP
#define XLRIS_MONTE_CARLO_HPP

#include "xlris/channel.hpp"
#include "xlris/phase.hpp"
#include "xlris/rate.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace xlris {

/// Trials are split into fixed blocks, each with its own generator seeded from
/// (seed, block index), so results do not depend on the thread count.
struct MonteCarloOptions {
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

inline constexpr std::size_t kMonteCarloBlock = 256;

/// Ergodic rate E{log2(1 + SINR_k)} with the instantaneous MRC SINR. The
/// e_noise / e_signal / i_sum fields hold sample moments of ||q_k||^2,
/// ||q_k||^4 and sum_i |q_k^H q_i|^2; `sinr` is 2^rate - 1.
RateReport monte_carlo_report(const StatisticalChannel &stat, const PhaseConfig &phase, double power, double noise,
                              const MonteCarloOptions &opts);

/// Sample moments of the cascaded channels, with standard errors.
struct MomentEstimate {
    std::size_t users = 0;
    std::vector<double> norm2, norm2_se;  // E{||q_k||^2}
    std::vector<double> norm4, norm4_se;  // E{||q_k||^4}
    std::vector<double> cross, cross_se;  // E{|q_k^H q_i|^2}, row-major K x K

    double cross_at(std::size_t k, std::size_t i) const { return cross[k * users + i]; }
};

MomentEstimate monte_carlo_moments(const StatisticalChannel &stat, const PhaseConfig &phase,
                                   const MonteCarloOptions &opts);

/// Tr{W} Tr{AB} I_N + Tr{A} Tr{B} W.
CMat lemma_moment_closed_form(const CMat &a, const CMat &b, const CMat &w);

/// Relative Frobenius error between a sample mean of
/// H^H A H W H^H B H (H with i.i.d. CN(0, 1) entries) and the closed form.
/// Returns the absolute error when the closed form vanishes.
double lemma_moment_check(const CMat &a, const CMat &b, const CMat &w, std::size_t trials, std::mt19937_64 &rng);

} // namespace xlris

#endif
