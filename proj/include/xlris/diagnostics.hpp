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

#ifndef XLRIS_DIAGNOSTICS_HPP
#define XLRIS_DIAGNOSTICS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace xlris {

struct GradCheckEntry {
    std::string name; // e.g. "f_ki_5" or "objective"
    std::size_t instance = 0;
    double max_rel_error = 0.0;
};

struct GradCheckReport {
    std::vector<GradCheckEntry> entries;
    double worst = 0.0;
};

/// Compares every analytic gradient with central differences (step h) on
/// random small scenarios. Relative errors use max(||fd||_inf, floor max(1, |f|))
/// as the denominator, so rounding noise of the differences does not count
/// for functions that barely depend on the phases.
GradCheckReport gradient_check(std::size_t instances, std::uint64_t seed, double h = 1e-6, double floor = 1e-4);

struct McCheckEntry {
    std::uint64_t seed = 0;
    std::size_t user = 0;
    double closed_form = 0.0;
    double monte_carlo = 0.0;
    double std_error = 0.0;
    bool pass = false; // |cf - mc| <= max(rel_tol * mc, 3 se)
};

struct McCheckOptions {
    std::size_t m = 16;
    std::size_t n = 36;
    std::size_t users = 4;
    std::size_t trials = 20000;
    std::size_t seeds = 5;
    std::uint64_t first_seed = 1;
    double rel_tol = 0.03;
    std::size_t threads = 1;
};

std::vector<McCheckEntry> mc_check(const McCheckOptions &opts);

} // namespace xlris

#endif
