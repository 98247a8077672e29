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

#include "xlris/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace xlris {

CVec array_response_ula(std::size_t m, double theta_a, double theta_e, double spacing_over_lambda) {
    if (m == 0)
        throw std::invalid_argument("array_response_ula: antenna count must be positive");
    const double k = kTwoPi * spacing_over_lambda * std::sin(theta_e) * std::sin(theta_a);
    CVec a(static_cast<Eigen::Index>(m));
    for (std::size_t x = 0; x < m; ++x)
        a[static_cast<Eigen::Index>(x)] = std::polar(1.0, k * static_cast<double>(x));
    return a;
}

CVec array_response_uspa(const RisGrid &grid, double theta_a, double theta_e, double spacing_over_lambda) {
    if (grid.rows == 0 || grid.cols == 0)
        throw std::invalid_argument("array_response_uspa: grid dimensions must be positive");
    const double k_row = kTwoPi * spacing_over_lambda * std::sin(theta_e) * std::sin(theta_a);
    const double k_col = kTwoPi * spacing_over_lambda * std::cos(theta_e);
    CVec a(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t x = 0; x < grid.size(); ++x) {
        const double phase = k_row * static_cast<double>(grid.row_of(x)) + k_col * static_cast<double>(grid.col_of(x));
        a[static_cast<Eigen::Index>(x)] = std::polar(1.0, phase);
    }
    return a;
}

Eigen::Vector3d element_position(std::size_t p, const RisGrid &grid, double d_h, double d_v) {
    if (p < 1 || p > grid.size())
        throw std::invalid_argument("element_position: index out of range");
    const std::size_t n = p - 1;
    return {0.0, static_cast<double>(grid.col_of(n)) * d_h, static_cast<double>(grid.row_of(n)) * d_v};
}

double sinc(double x) {
    if (x == 0.0)
        return 1.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}

RMat correlation_matrix(const RisGrid &grid, double d_ris, double lambda) {
    if (grid.rows == 0 || grid.cols == 0)
        throw std::invalid_argument("correlation_matrix: grid dimensions must be positive");
    if (!(d_ris > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("correlation_matrix: spacing and wavelength must be positive");
    const auto n = static_cast<Eigen::Index>(grid.size());
    RMat r(n, n);
    // only the integer offset (drow, dcol) matters; distances are exact multiples of d_ris
    for (Eigen::Index p = 0; p < n; ++p) {
        r(p, p) = 1.0;
        for (Eigen::Index q = p + 1; q < n; ++q) {
            const double dy = static_cast<double>(grid.col_of(p)) - static_cast<double>(grid.col_of(q));
            const double dz = static_cast<double>(grid.row_of(p)) - static_cast<double>(grid.row_of(q));
            const double dist = d_ris * std::sqrt(dy * dy + dz * dz);
            // sinc(1) is exactly zero; snap integer arguments so lambda/2 spacing gives exact zeros
            double arg = 2.0 * dist / lambda;
            const double nearest = std::round(arg);
            if (std::abs(arg - nearest) < 1e-12 * std::max(1.0, arg))
                arg = nearest;
            const double v = (arg == nearest && arg != 0.0) ? 0.0 : sinc(arg);
            r(p, q) = v;
            r(q, p) = v;
        }
    }
    return r;
}

double path_loss(double distance, double exponent) {
    if (!(distance > 0.0))
        throw std::invalid_argument("path_loss: distance must be positive");
    return 1e-3 * std::pow(distance, -exponent);
}

} // namespace xlris
