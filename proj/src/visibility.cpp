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

#include "xlris/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xlris {

VisibilityRegion::VisibilityRegion(std::size_t n, IndexList indices) : indices_(std::move(indices)), mask_(RVec::Zero(static_cast<Eigen::Index>(n))) {
    if (indices_.empty())
        throw std::invalid_argument("visibility region must contain at least one element");
    for (std::size_t q = 0; q < indices_.size(); ++q) {
        const Eigen::Index idx = indices_[q];
        if (idx < 0 || idx >= static_cast<Eigen::Index>(n))
            throw std::invalid_argument("visibility region index out of range");
        if (q > 0 && indices_[q - 1] >= idx)
            throw std::invalid_argument("visibility region indices must be strictly increasing");
        mask_[idx] = 1.0;
    }
}

VisibilityRegion VisibilityRegion::full(std::size_t n) {
    IndexList all(n);
    for (std::size_t q = 0; q < n; ++q)
        all[q] = static_cast<Eigen::Index>(q);
    return VisibilityRegion(n, std::move(all));
}

namespace {

VisibilityRegion block_region(const BlockVr &b, const RisGrid &grid) {
    if (b.rows == 0 || b.cols == 0)
        throw std::invalid_argument("build_vr: empty block");
    if (b.row0 + b.rows > grid.rows || b.col0 + b.cols > grid.cols)
        throw std::invalid_argument("build_vr: block exceeds the RIS grid");
    IndexList idx;
    idx.reserve(b.rows * b.cols);
    for (std::size_t r = b.row0; r < b.row0 + b.rows; ++r)
        for (std::size_t c = b.col0; c < b.col0 + b.cols; ++c)
            idx.push_back(static_cast<Eigen::Index>(r * grid.cols + c));
    return VisibilityRegion(grid.size(), std::move(idx));
}

std::size_t lerp_round(std::size_t from, std::size_t to, double t) {
    return static_cast<std::size_t>(std::llround((1.0 - t) * static_cast<double>(from) + t * static_cast<double>(to)));
}

} // namespace

VisibilityRegion build_vr(const VrSpec &spec, const RisGrid &grid) {
    if (grid.rows == 0 || grid.cols == 0)
        throw std::invalid_argument("build_vr: grid dimensions must be positive");
    if (std::holds_alternative<FullVr>(spec))
        return VisibilityRegion::full(grid.size());
    if (const auto *b = std::get_if<BlockVr>(&spec))
        return block_region(*b, grid);
    const auto &list = std::get<IndexVr>(spec).indices;
    IndexList idx(list.begin(), list.end());
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw std::invalid_argument("build_vr: duplicate index");
    return VisibilityRegion(grid.size(), std::move(idx));
}

std::vector<VisibilityRegion> build_random_vrs(const RandomVrSpec &spec, const RisGrid &grid, std::size_t users,
                                               std::mt19937_64 &rng) {
    if (users == 0)
        throw std::invalid_argument("build_random_vrs: need at least one user");
    if (!(spec.overlap >= 0.0 && spec.overlap <= 1.0))
        throw std::invalid_argument("build_random_vrs: overlap must lie in [0, 1]");
    if (!(spec.min_band_fraction > 0.0 && spec.min_band_fraction <= 1.0) ||
        !(spec.min_span_fraction > 0.0 && spec.min_span_fraction <= 1.0))
        throw std::invalid_argument("build_random_vrs: size fractions must lie in (0, 1]");

    const bool by_rows = grid.rows >= users;
    if (!by_rows && grid.cols < users)
        throw std::invalid_argument("build_random_vrs: grid too small for one band per user");
    const std::size_t band_axis = by_rows ? grid.rows : grid.cols;
    const std::size_t span_axis = by_rows ? grid.cols : grid.rows;

    auto uniform_int = [&rng](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };

    // (band offset, band extent, span offset, span extent) per user
    struct Rect {
        std::size_t b0, b_len, s0, s_len;
    };
    std::vector<Rect> disjoint(users);
    for (std::size_t k = 0; k < users; ++k) {
        const std::size_t lo = k * band_axis / users;
        const std::size_t hi = (k + 1) * band_axis / users;
        const std::size_t band = hi - lo;
        const auto min_b = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(spec.min_band_fraction * static_cast<double>(band))));
        const auto min_s = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(spec.min_span_fraction * static_cast<double>(span_axis))));
        Rect r{};
        r.b_len = uniform_int(min_b, band);
        r.s_len = uniform_int(min_s, span_axis);
        r.b0 = lo + uniform_int(0, band - r.b_len);
        r.s0 = uniform_int(0, span_axis - r.s_len);
        disjoint[k] = r;
    }

    std::vector<VisibilityRegion> out;
    out.reserve(users);
    const Rect &shared = disjoint.front();
    for (std::size_t k = 0; k < users; ++k) {
        const Rect &d = disjoint[k];
        Rect r{};
        r.b_len = std::max<std::size_t>(1, lerp_round(d.b_len, shared.b_len, spec.overlap));
        r.s_len = std::max<std::size_t>(1, lerp_round(d.s_len, shared.s_len, spec.overlap));
        r.b0 = std::min(lerp_round(d.b0, shared.b0, spec.overlap), band_axis - r.b_len);
        r.s0 = std::min(lerp_round(d.s0, shared.s0, spec.overlap), span_axis - r.s_len);
        BlockVr block = by_rows ? BlockVr{r.b0, r.s0, r.b_len, r.s_len} : BlockVr{r.s0, r.b0, r.s_len, r.b_len};
        out.push_back(block_region(block, grid));
    }
    return out;
}

RMat vr_covariance(const RMat &r_ris, const VisibilityRegion &vr) {
    if (r_ris.rows() != r_ris.cols() || static_cast<std::size_t>(r_ris.rows()) != vr.element_count())
        throw std::invalid_argument("vr_covariance: dimension mismatch");
    const RVec &d = vr.mask();
    return d.asDiagonal() * r_ris * d.asDiagonal();
}

} // namespace xlris
