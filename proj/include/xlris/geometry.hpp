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

#ifndef XLRIS_GEOMETRY_HPP
#define XLRIS_GEOMETRY_HPP

#include "xlris/linalg.hpp"

#include <cmath>
#include <cstddef>

namespace xlris {

/// Planar RIS layout: `rows` x `cols` elements indexed row by row.
struct RisGrid {
    std::size_t rows = 1;
    std::size_t cols = 1;

    std::size_t size() const noexcept { return rows * cols; }
    /// Horizontal index of the 0-based element n.
    std::size_t col_of(std::size_t n) const noexcept { return n % cols; }
    /// Vertical index of the 0-based element n.
    std::size_t row_of(std::size_t n) const noexcept { return n / cols; }
};

/// Uniform linear array response. Entry x (0-based) is
/// exp{j 2 pi s x sin(theta_e) sin(theta_a)} with s = spacing / wavelength.
CVec array_response_ula(std::size_t m, double theta_a, double theta_e, double spacing_over_lambda);

/// Planar array response using the row-by-row element ordering of RisGrid:
/// exp{j 2 pi s (row sin(theta_e) sin(theta_a) + col cos(theta_e))}.
CVec array_response_uspa(const RisGrid &grid, double theta_a, double theta_e, double spacing_over_lambda);

/// Position [0, col * d_h, row * d_v] of the 1-based element p.
Eigen::Vector3d element_position(std::size_t p, const RisGrid &grid, double d_h, double d_v);

/// Normalized sinc, sin(pi x) / (pi x).
double sinc(double x);

/// Isotropic RIS correlation: entry (p, q) = sinc(2 |u_p - u_q| / lambda).
RMat correlation_matrix(const RisGrid &grid, double d_ris, double lambda);

/// Large-scale gain 1e-3 * d^(-exponent).
double path_loss(double distance, double exponent);

inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

} // namespace xlris

#endif
