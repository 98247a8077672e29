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

#include "xlris/experiment.hpp"

#include "xlris/errors.hpp"
#include "xlris/monte_carlo.hpp"
#include "xlris/parallel.hpp"
#include "xlris/rate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace xlris {

namespace {

constexpr std::array<std::pair<SweepAxis, std::string_view>, 7> kAxes{{{SweepAxis::None, "none"},
                                                                        {SweepAxis::M, "M"},
                                                                        {SweepAxis::N, "N"},
                                                                        {SweepAxis::Delta, "delta"},
                                                                        {SweepAxis::Eps, "eps"},
                                                                        {SweepAxis::DRis, "d_ris"},
                                                                        {SweepAxis::Overlap, "overlap"}}};

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethods{{{Method::ClosedForm, "closed-form"},
                                                                       {Method::ClosedFormReduced, "closed-form-reduced"},
                                                                       {Method::MonteCarlo, "monte-carlo"},
                                                                       {Method::OptimizeGradient, "optimize-gradient"},
                                                                       {Method::OptimizeGa, "optimize-ga"},
                                                                       {Method::RandomPhase, "random-phase"}}};

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N> &table, E value) {
    for (const auto &[v, s] : table)
        if (v == value)
            return s;
    return "unknown";
}

template <class E, std::size_t N>
std::optional<E> value_of(const std::array<std::pair<E, std::string_view>, N> &table, std::string_view s) {
    for (const auto &[v, name] : table)
        if (name == s)
            return v;
    return std::nullopt;
}

bool is_count(double v) { return v >= 1.0 && std::floor(v) == v && v < 1e9; }

} // namespace

std::string_view to_string(SweepAxis axis) { return name_of(kAxes, axis); }
std::string_view to_string(Method method) { return name_of(kMethods, method); }
std::string_view to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }
std::string_view to_string(EvalPhase phase) { return phase == EvalPhase::Zeros ? "zeros" : "random"; }
std::optional<SweepAxis> parse_sweep_axis(std::string_view s) { return value_of(kAxes, s); }
std::optional<Method> parse_method(std::string_view s) { return value_of(kMethods, s); }

std::optional<OutputFormat> parse_output_format(std::string_view s) {
    if (s == "csv")
        return OutputFormat::Csv;
    if (s == "json")
        return OutputFormat::Json;
    return std::nullopt;
}

std::optional<EvalPhase> parse_eval_phase(std::string_view s) {
    if (s == "zeros")
        return EvalPhase::Zeros;
    if (s == "random")
        return EvalPhase::Random;
    return std::nullopt;
}

RisGrid grid_for(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("grid_for: N must be positive");
    auto rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (rows * rows > n)
        --rows;
    while (n % rows != 0)
        --rows;
    return {rows, n / rows};
}

void ExperimentSpec::validate() const {
    if (methods.empty())
        throw ConfigError("methods", "at least one method is required");
    if (axis != SweepAxis::None && values.empty())
        throw ConfigError("sweep.values", "a sweep needs at least one value");
    for (double v : values) {
        if (!std::isfinite(v))
            throw ConfigError("sweep.values", "values must be finite");
        switch (axis) {
        case SweepAxis::M:
        case SweepAxis::N:
            if (!is_count(v))
                throw ConfigError("sweep.values", "M and N sweeps need positive integers");
            break;
        case SweepAxis::DRis:
            if (!(v > 0.0))
                throw ConfigError("sweep.values", "d_ris must be positive");
            break;
        case SweepAxis::Delta:
        case SweepAxis::Eps:
            if (!(v >= 0.0))
                throw ConfigError("sweep.values", "Rician factors must be non-negative");
            break;
        case SweepAxis::Overlap:
            if (!(v >= 0.0 && v <= 1.0))
                throw ConfigError("sweep.values", "overlap must lie in [0, 1]");
            break;
        case SweepAxis::None:
            break;
        }
    }
    if (axis == SweepAxis::Overlap && visibility.mode != VisibilityPlan::Mode::Random)
        throw ConfigError("visibility.mode", "an overlap sweep needs random visibility regions");
    if (visibility.mode == VisibilityPlan::Mode::Explicit) {
        if (visibility.regions.size() != scenario.k)
            throw ConfigError("visibility.regions", "one region per user is required");
        if (axis == SweepAxis::N)
            throw ConfigError("visibility.regions", "explicit regions cannot follow an N sweep");
    }
    if (seeds.empty())
        throw ConfigError("replicates.seeds", "at least one seed is required");
    if (mc_trials == 0)
        throw ConfigError("monte_carlo.trials", "must be positive");
    if (random_phase_draws == 0)
        throw ConfigError("random_phase.draws", "must be positive");
    if (threads == 0)
        throw ConfigError("threads", "must be positive");
    try {
        scenario.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError("scenario", e.what());
    }
    try {
        optimizer.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError("optimizer", e.what());
    }
    try {
        ga.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError("ga", e.what());
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Scenario build_scenario(const ExperimentSpec &spec, double v, std::uint64_t seed) {
    SystemConfig cfg = spec.scenario;
    VisibilityPlan plan = spec.visibility;
    switch (spec.axis) {
    case SweepAxis::M:
        cfg.m = static_cast<std::size_t>(v);
        break;
    case SweepAxis::N:
        cfg.grid = grid_for(static_cast<std::size_t>(v));
        break;
    case SweepAxis::Delta:
        cfg.delta = v;
        break;
    case SweepAxis::Eps:
        cfg.eps.assign(cfg.k, v);
        break;
    case SweepAxis::DRis:
        cfg.d_ris = v * cfg.wavelength;
        break;
    case SweepAxis::Overlap:
        plan.random.overlap = v;
        break;
    case SweepAxis::None:
        break;
    }
    cfg.seed = seed;
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError("scenario", e.what());
    }

    std::mt19937_64 rng(seed);
    const AngleSet angles = AngleSet::random(cfg.k, rng);
    std::vector<VisibilityRegion> vrs;
    try {
        switch (plan.mode) {
        case VisibilityPlan::Mode::Full:
            vrs.assign(cfg.k, VisibilityRegion::full(cfg.n()));
            break;
        case VisibilityPlan::Mode::Random:
            vrs = build_random_vrs(plan.random, cfg.grid, cfg.k, rng);
            break;
        case VisibilityPlan::Mode::Explicit:
            for (const auto &r : plan.regions)
                vrs.push_back(build_vr(r, cfg.grid));
            break;
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError("visibility", e.what());
    }
    return Scenario{cfg, StatisticalChannel::build(cfg, angles, std::move(vrs)), plan};
}

namespace {

ResultRow row_from_report(const RateReport &rep) {
    ResultRow row;
    row.user_rates = rep.rates();
    row.min_rate = rep.min_rate;
    return row;
}

template <class F> auto timed(bool record, std::optional<double> &seconds, F &&f) {
    if (record)
        f();
    const auto start = std::chrono::steady_clock::now();
    auto result = f();
    if (record)
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

ResultRow run_method(const ExperimentSpec &spec, const Scenario &sc, Method method, std::uint64_t seed,
                     std::size_t inner_threads) {
    const StatisticalChannel &stat = sc.channel;
    const double p = sc.config.power_w;
    const double s2 = sc.config.noise_w;
    const PhaseConfig eval_phase = spec.eval_phase == EvalPhase::Zeros
                                       ? PhaseConfig::zeros(stat.n())
                                       : PhaseConfig(random_phases(stat.n(), derive_seed(seed, 1)));
    std::optional<double> seconds;
    ResultRow row;

    switch (method) {
    case Method::ClosedForm:
        row = row_from_report(
            timed(spec.record_timing, seconds, [&] { return closed_form_report(stat, eval_phase, p, s2); }));
        break;
    case Method::ClosedFormReduced:
        row = row_from_report(timed(spec.record_timing, seconds, [&] {
            return closed_form_report_reduced(reduce(stat, eval_phase), stat, p, s2);
        }));
        break;
    case Method::MonteCarlo: {
        MonteCarloOptions opts{spec.mc_trials, derive_seed(seed, 2), inner_threads};
        const RateReport rep =
            timed(spec.record_timing, seconds, [&] { return monte_carlo_report(stat, eval_phase, p, s2, opts); });
        row = row_from_report(rep);
        const auto lo = std::min_element(rep.users.begin(), rep.users.end(),
                                         [](const UserRate &a, const UserRate &b) { return a.rate < b.rate; });
        row.mc_std_error = lo->std_error;
        break;
    }
    case Method::OptimizeGradient: {
        OptimizerConfig oc = spec.optimizer;
        oc.seed = derive_seed(seed, 3);
        const OptimizeResult res = timed(spec.record_timing, seconds, [&] { return optimize(stat, oc, p, s2); });
        row = row_from_report(closed_form_report(stat, PhaseConfig(res.theta_star), p, s2));
        row.trace_length = res.iterations;
        break;
    }
    case Method::OptimizeGa: {
        GaConfig gc = spec.ga;
        gc.seed = derive_seed(seed, 4);
        gc.threads = inner_threads;
        const ReducedChannel red = reduce(stat, PhaseConfig::zeros(stat.n()));
        const double mu = spec.optimizer.mu;
        auto objective = [&](const RVec &theta) { return smoothed_objective(red, stat, theta, p, s2, mu); };
        const GaResult res = timed(spec.record_timing, seconds, [&] { return ga_optimize(objective, stat.n(), gc); });
        row = row_from_report(closed_form_report(stat, PhaseConfig(res.theta_star), p, s2));
        row.trace_length = gc.generations;
        break;
    }
    case Method::RandomPhase: {
        const std::size_t draws = spec.random_phase_draws;
        row = timed(spec.record_timing, seconds, [&] {
            ResultRow r;
            r.user_rates.assign(stat.k(), 0.0);
            ReducedChannel red = reduce(stat, PhaseConfig::zeros(stat.n()));
            for (std::size_t d = 0; d < draws; ++d) {
                update_phase(red, PhaseConfig(random_phases(stat.n(), derive_seed(seed, 100 + d))));
                const RateReport rep = closed_form_report_reduced(red, stat, p, s2);
                for (std::size_t k = 0; k < stat.k(); ++k)
                    r.user_rates[k] += rep.users[k].rate / static_cast<double>(draws);
                r.min_rate += rep.min_rate / static_cast<double>(draws);
            }
            return r;
        });
        break;
    }
    }
    row.method = std::string(to_string(method));
    row.seed = seed;
    row.wall_seconds = seconds;
    return row;
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec &spec) {
    spec.validate();
    const std::vector<double> points = spec.axis == SweepAxis::None ? std::vector<double>{0.0} : spec.values;
    const std::size_t tasks = points.size() * spec.seeds.size();
    const std::size_t inner_threads = tasks >= spec.threads ? 1 : spec.threads;
    std::vector<std::vector<ResultRow>> slots(tasks);
    parallel_for(tasks, spec.threads, [&](std::size_t t) {
        const double v = points[t / spec.seeds.size()];
        const std::uint64_t seed = spec.seeds[t % spec.seeds.size()];
        const Scenario sc = build_scenario(spec, v, seed);
        for (Method m : spec.methods) {
            ResultRow row = run_method(spec, sc, m, seed, inner_threads);
            row.sweep_value = v;
            slots[t].push_back(std::move(row));
        }
    });
    std::vector<ResultRow> rows;
    for (auto &s : slots)
        for (auto &r : s)
            rows.push_back(std::move(r));
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow &a, const ResultRow &b) {
        return std::tie(a.sweep_value, a.method, a.seed) < std::tie(b.sweep_value, b.method, b.seed);
    });
    return rows;
}

} // namespace xlris
