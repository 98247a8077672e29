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

#ifndef XLRIS_OPTIMIZER_HPP
#define XLRIS_OPTIMIZER_HPP

#include "xlris/aux_values.hpp"
#include "xlris/channel.hpp"
#include "xlris/linalg.hpp"
#include "xlris/phase.hpp"
#include "xlris/smoothing.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace xlris {

struct OptimizerConfig {
    double mu = 200.0;
    double tol = 1e-4;
    std::size_t max_iter = 500;
    double kappa0 = 1.0;
    double rho = 0.5;
    double c1 = 1e-4;
    std::size_t max_halvings = 50;
    std::uint64_t seed = 1;

    void validate() const;
};

/// e_{i+1} = (1 + sqrt(4 e_i^2 + 1)) / 2.
inline double next_momentum(double e) { return 0.5 * (1.0 + std::sqrt(4.0 * e * e + 1.0)); }

/// Largest kappa0 rho^m (m <= max_halvings) with
/// f(theta + kappa g) >= f(theta) + c1 kappa ||g||^2, or 0 if none is found.
/// Throws std::invalid_argument for a zero gradient and NumericalError for a
/// non-finite trial value.
double backtracking_step(const RVec &theta, double f_theta, const RVec &grad,
                         const std::function<double(const RVec &)> &objective, const OptimizerConfig &cfg);

struct TraceEntry {
    std::size_t iteration = 0;
    double objective = 0.0; // smoothed objective at theta_i
    double min_rate = 0.0;
    double kappa = 0.0;
    double grad_norm = 0.0;
};

enum class StopReason { Tolerance, ZeroGradient, MaxIterations };

std::string_view to_string(StopReason reason);

/// Iterates of the accelerated ascent.
struct OptimizerState {
    std::size_t i = 0;
    RVec theta, x, x_prev;
    double e = 1.0;
    double kappa = 0.0;
    std::vector<TraceEntry> trace;
    RVec best_theta;
    double best_value = 0.0;
};

struct OptimizeResult {
    RVec theta_star; // in [0, 2 pi)
    double value = 0.0;    // smoothed objective at theta_star
    double min_rate = 0.0; // exact minimum rate at theta_star
    double initial_value = 0.0;
    std::size_t iterations = 0;
    StopReason reason = StopReason::MaxIterations;
    std::vector<TraceEntry> trace;
    /// Incumbent best value after each iteration.
    std::vector<double> best_history;
};

/// Smoothed min-rate objective evaluated through a reduced channel.
double smoothed_objective(const ReducedChannel &reduced, const StatisticalChannel &stat, const RVec &theta,
                          double power, double noise, double mu);

/// Random initial phases drawn uniformly from [0, 2 pi) with the config seed.
RVec random_phases(std::size_t n, std::uint64_t seed);

OptimizeResult optimize(const StatisticalChannel &stat, const OptimizerConfig &cfg, double power, double noise,
                        std::optional<RVec> theta0 = std::nullopt);

} // namespace xlris

#endif
