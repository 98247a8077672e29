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

#ifndef XLRIS_SMOOTHING_HPP
#define XLRIS_SMOOTHING_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace xlris {

/// -(1/mu) ln sum_k exp(-mu r_k), evaluated with the minimum factored out.
inline double smoothed_min(std::span<const double> rates, double mu) {
    if (rates.empty())
        throw std::invalid_argument("smoothed_min: empty rate vector");
    if (!(mu > 0.0))
        throw std::invalid_argument("smoothed_min: mu must be positive");
    const double lo = *std::min_element(rates.begin(), rates.end());
    double s = 0.0;
    for (double r : rates)
        s += std::exp(-mu * (r - lo));
    return lo - std::log(s) / mu;
}

/// d smoothed_min / d r_k = exp(-mu r_k) / sum_j exp(-mu r_j).
inline std::vector<double> softmin_weights(std::span<const double> rates, double mu) {
    if (rates.empty())
        throw std::invalid_argument("softmin_weights: empty rate vector");
    if (!(mu > 0.0))
        throw std::invalid_argument("softmin_weights: mu must be positive");
    const double lo = *std::min_element(rates.begin(), rates.end());
    std::vector<double> w(rates.size());
    double s = 0.0;
    for (std::size_t k = 0; k < rates.size(); ++k) {
        w[k] = std::exp(-mu * (rates[k] - lo));
        s += w[k];
    }
    for (double &x : w)
        x /= s;
    return w;
}

} // namespace xlris

#endif
