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

#ifndef XLRIS_GA_HPP
#define XLRIS_GA_HPP

#include "xlris/linalg.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace xlris {

struct GaConfig {
    std::size_t population = 100;
    std::size_t generations = 300;
    double crossover_rate = 0.9;
    double mutation_rate = 0.05;
    double mutation_sigma = 0.3; // radians
    std::size_t elitism = 2;
    double blend_alpha = 0.5;
    std::uint64_t seed = 1;
    std::size_t threads = 1;

    void validate() const;
};

struct GaResult {
    RVec theta_star; // in [0, 2 pi)
    double best_value = 0.0;
    double runtime_seconds = 0.0;
    std::size_t evaluations = 0;
    /// Best value after initialization and after each generation.
    std::vector<double> best_history;
};

/// Maximizes `objective` over [0, 2 pi)^n with a real-coded genetic
/// algorithm. The objective must be safe to call concurrently when
/// cfg.threads > 1.
GaResult ga_optimize(const std::function<double(const RVec &)> &objective, std::size_t n, const GaConfig &cfg);

} // namespace xlris

#endif
