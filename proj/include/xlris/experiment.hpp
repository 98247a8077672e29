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

#ifndef XLRIS_EXPERIMENT_HPP
#define XLRIS_EXPERIMENT_HPP

#include "xlris/channel.hpp"
#include "xlris/ga.hpp"
#include "xlris/optimizer.hpp"
#include "xlris/visibility.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xlris {

enum class SweepAxis { None, M, N, Delta, Eps, DRis, Overlap };
enum class Method { ClosedForm, ClosedFormReduced, MonteCarlo, OptimizeGradient, OptimizeGa, RandomPhase };
enum class OutputFormat { Csv, Json };
/// Phase vector used by the rate-evaluation methods.
enum class EvalPhase { Zeros, Random };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Method method);
std::string_view to_string(OutputFormat format);
std::string_view to_string(EvalPhase phase);
std::optional<SweepAxis> parse_sweep_axis(std::string_view s);
std::optional<Method> parse_method(std::string_view s);
std::optional<OutputFormat> parse_output_format(std::string_view s);
std::optional<EvalPhase> parse_eval_phase(std::string_view s);

struct VisibilityPlan {
    enum class Mode { Full, Random, Explicit } mode = Mode::Random;
    RandomVrSpec random;
    std::vector<VrSpec> regions; // Explicit: one per user
};

struct ExperimentSpec {
    SystemConfig scenario;
    /// Grid taken from N1/N2 as given; otherwise derived from N.
    bool explicit_grid = false;
    VisibilityPlan visibility;
    SweepAxis axis = SweepAxis::None;
    std::vector<double> values;
    std::vector<Method> methods{Method::ClosedForm};
    EvalPhase eval_phase = EvalPhase::Zeros;
    std::size_t mc_trials = 10000;
    std::size_t random_phase_draws = 20;
    OptimizerConfig optimizer;
    GaConfig ga;
    std::vector<std::uint64_t> seeds{1};
    std::size_t threads = 1;
    bool record_timing = false;
    std::filesystem::path output = "results.csv";
    OutputFormat format = OutputFormat::Csv;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Reads a YAML experiment description. Unknown keys are rejected.
ExperimentSpec load_experiment(const std::filesystem::path &path);
ExperimentSpec parse_experiment(std::string_view yaml_text);

struct ResultRow {
    double sweep_value = 0.0;
    std::string method;
    std::uint64_t seed = 0;
    std::vector<double> user_rates;
    double min_rate = 0.0;
    std::optional<std::size_t> trace_length;
    std::optional<double> wall_seconds;
    std::optional<double> mc_std_error; // of the user holding the minimum

    friend bool operator==(const ResultRow &, const ResultRow &) = default;
};

/// Near-square split of N: rows is the largest divisor not above sqrt(N).
RisGrid grid_for(std::size_t n);

/// Scenario of one sweep point and replicate seed.
struct Scenario {
    SystemConfig config;
    StatisticalChannel channel;
    VisibilityPlan visibility;
};

Scenario build_scenario(const ExperimentSpec &spec, double sweep_value, std::uint64_t seed);

/// Sub-seed for a named random stream of one replicate.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Rows sorted by (sweep value, method, seed).
std::vector<ResultRow> run_experiment(const ExperimentSpec &spec);

/// Overwrites `path`. Throws IoError when it cannot be written.
void emit_results(const std::vector<ResultRow> &rows, const std::filesystem::path &path, OutputFormat format);
std::string format_results(const std::vector<ResultRow> &rows, OutputFormat format);
std::vector<ResultRow> parse_results_csv(std::string_view text);

} // namespace xlris

#endif
