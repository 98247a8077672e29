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

#include "xlris/diagnostics.hpp"
#include "xlris/errors.hpp"
#include "xlris/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>

namespace {

int run_command(const std::string &spec_path, const std::string &out, const std::string &format, std::size_t threads,
                std::uint64_t seed_offset) {
    xlris::ExperimentSpec spec = xlris::load_experiment(spec_path);
    if (!out.empty())
        spec.output = out;
    if (!format.empty())
        spec.format = *xlris::parse_output_format(format);
    if (threads > 0)
        spec.threads = threads;
    for (auto &s : spec.seeds)
        s += seed_offset;
    const auto rows = xlris::run_experiment(spec);
    xlris::emit_results(rows, spec.output, spec.format);
    std::cerr << "wrote " << rows.size() << " rows to " << spec.output.string() << '\n';
    return 0;
}

int validate_command(const std::string &spec_path) {
    const xlris::ExperimentSpec spec = xlris::load_experiment(spec_path);
    const std::vector<double> points =
        spec.axis == xlris::SweepAxis::None ? std::vector<double>{0.0} : spec.values;
    for (double v : points)
        for (auto seed : spec.seeds)
            (void)xlris::build_scenario(spec, v, seed);
    std::cout << "ok: " << points.size() * spec.seeds.size() * spec.methods.size() << " rows planned ("
              << points.size() << " sweep points, " << spec.seeds.size() << " seeds, " << spec.methods.size()
              << " methods)\n";
    return 0;
}

int gradcheck_command(std::size_t instances, std::uint64_t seed, double tol) {
    const auto rep = xlris::gradient_check(instances, seed);
    std::map<std::string, double> worst;
    for (const auto &e : rep.entries)
        worst[e.name] = std::max(worst[e.name], e.max_rel_error);
    for (const auto &[name, err] : worst)
        std::printf("%-14s max rel error %.3e\n", name.c_str(), err);
    const bool ok = rep.worst <= tol;
    std::printf("%s: worst %.3e over %zu checks (tol %.1e)\n", ok ? "PASS" : "FAIL", rep.worst, rep.entries.size(),
                tol);
    return ok ? 0 : 1;
}

int mc_check_command(const xlris::McCheckOptions &opts) {
    const auto entries = xlris::mc_check(opts);
    bool ok = true;
    std::printf("%6s %4s %14s %14s %10s %s\n", "seed", "user", "closed-form", "monte-carlo", "std-err", "");
    for (const auto &e : entries) {
        std::printf("%6llu %4zu %14.6f %14.6f %10.2e %s\n", static_cast<unsigned long long>(e.seed), e.user,
                    e.closed_form, e.monte_carlo, e.std_error, e.pass ? "ok" : "MISMATCH");
        ok = ok && e.pass;
    }
    std::printf("%s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Rate analysis and phase-shift optimization for XL-RIS-aided massive MIMO uplinks"};
    app.require_subcommand(1);

    std::string spec_path, out, format;
    std::size_t threads = 0;
    std::uint64_t seed_offset = 0;
    auto *run = app.add_subcommand("run", "Run an experiment description and write its result rows");
    run->add_option("spec", spec_path, "Experiment file (YAML)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "Output path (overrides the file)");
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--seed-offset", seed_offset, "Added to every replicate seed");

    auto *validate = app.add_subcommand("validate", "Parse an experiment file and build every scenario");
    validate->add_option("spec", spec_path, "Experiment file (YAML)")->required()->check(CLI::ExistingFile);

    std::size_t instances = 20;
    std::uint64_t gc_seed = 1;
    double tol = 1e-5;
    auto *gradcheck = app.add_subcommand("gradcheck", "Compare analytic gradients with finite differences");
    gradcheck->add_option("--instances", instances, "Random scenarios")->check(CLI::PositiveNumber);
    gradcheck->add_option("--seed", gc_seed, "Scenario seed");
    gradcheck->add_option("--tol", tol, "Maximum relative error");

    xlris::McCheckOptions mc;
    auto *mc_check = app.add_subcommand("mc-check", "Compare closed-form rates with Monte Carlo estimates");
    mc_check->add_option("--M", mc.m, "BS antennas")->check(CLI::PositiveNumber);
    mc_check->add_option("--N", mc.n, "RIS elements")->check(CLI::PositiveNumber);
    mc_check->add_option("--K", mc.users, "Users")->check(CLI::PositiveNumber);
    mc_check->add_option("--trials", mc.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    mc_check->add_option("--seeds", mc.seeds, "Scenario seeds")->check(CLI::PositiveNumber);
    mc_check->add_option("--first-seed", mc.first_seed, "First scenario seed");
    mc_check->add_option("--rel-tol", mc.rel_tol, "Relative tolerance");
    mc_check->add_option("--threads", mc.threads, "Worker threads")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return run_command(spec_path, out, format, threads, seed_offset);
        if (*validate)
            return validate_command(spec_path);
        if (*gradcheck)
            return gradcheck_command(instances, gc_seed, tol);
        return mc_check_command(mc);
    } catch (const xlris::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const xlris::IoError &e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
