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

#ifndef XLRIS_VISIBILITY_HPP
#define XLRIS_VISIBILITY_HPP

#include "xlris/geometry.hpp"
#include "xlris/linalg.hpp"

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace xlris {

/// Set of RIS elements seen by one user. Indices are 0-based and strictly
/// increasing; the mask is the matching 0/1 indicator vector.
class VisibilityRegion {
  public:
    VisibilityRegion(std::size_t n, IndexList indices);

    static VisibilityRegion full(std::size_t n);

    std::span<const Eigen::Index> indices() const noexcept { return indices_; }
    const RVec &mask() const noexcept { return mask_; }
    std::size_t visible_count() const noexcept { return indices_.size(); }
    std::size_t element_count() const noexcept { return static_cast<std::size_t>(mask_.size()); }
    bool is_full() const noexcept { return visible_count() == element_count(); }
    bool contains(Eigen::Index n) const noexcept { return mask_[n] != 0.0; }

  private:
    IndexList indices_;
    RVec mask_;
};

struct FullVr {};

/// Rectangle of `rows` x `cols` elements whose top-left corner is (row0, col0).
struct BlockVr {
    std::size_t row0 = 0;
    std::size_t col0 = 0;
    std::size_t rows = 1;
    std::size_t cols = 1;
};

/// Explicit 0-based element indices (any order, duplicates rejected).
struct IndexVr {
    std::vector<std::size_t> indices;
};

using VrSpec = std::variant<FullVr, BlockVr, IndexVr>;

VisibilityRegion build_vr(const VrSpec &spec, const RisGrid &grid);

/// Random rectangular VRs for a group of users.
///
/// With overlap 0 the grid is split into one band per user (rows when
/// there are at least as many rows as users, columns otherwise) and each
/// user draws a rectangle inside its band. With overlap 1 every user gets
/// user 0's rectangle. Intermediate values move size and corner linearly
/// between the two.
struct RandomVrSpec {
    double overlap = 0.0;
    /// Smallest extent along the band direction, as fraction of the band.
    double min_band_fraction = 0.5;
    /// Smallest extent across the band, as fraction of the grid.
    double min_span_fraction = 0.5;
};

std::vector<VisibilityRegion> build_random_vrs(const RandomVrSpec &spec, const RisGrid &grid, std::size_t users,
                                               std::mt19937_64 &rng);

/// D_k^{1/2} R D_k^{1/2} for a 0/1 mask.
RMat vr_covariance(const RMat &r_ris, const VisibilityRegion &vr);

} // namespace xlris

#endif
