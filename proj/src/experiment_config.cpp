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

#include "xlris/errors.hpp"
#include "xlris/experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace xlris {

namespace {

std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

void expect_map(const YAML::Node &node, const std::string &path) {
    if (!node.IsMap())
        throw ConfigError(path.empty() ? "<root>" : path, "expected a mapping");
}

void check_keys(const YAML::Node &node, const std::string &path, std::initializer_list<std::string_view> allowed) {
    expect_map(node, path);
    for (const auto &kv : node) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(join(path, key), "unknown key");
    }
}

template <class T> T as(const YAML::Node &node, const std::string &field) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        throw ConfigError(field, "invalid value");
    }
}

template <class T> void read(const YAML::Node &parent, const std::string &path, const char *key, T &out) {
    if (const YAML::Node n = parent[key])
        out = as<T>(n, join(path, key));
}

std::size_t read_count(const YAML::Node &parent, const std::string &path, const char *key, std::size_t fallback) {
    const YAML::Node n = parent[key];
    if (!n)
        return fallback;
    const auto v = as<long long>(n, join(path, key));
    if (v < 0)
        throw ConfigError(join(path, key), "must be non-negative");
    return static_cast<std::size_t>(v);
}

void read_scenario(const YAML::Node &n, ExperimentSpec &spec) {
    const std::string p = "scenario";
    check_keys(n, p,
               {"M", "N", "N1", "N2", "K", "power_dbm", "noise_dbm", "wavelength", "d_bs_over_lambda",
                "d_ris_over_lambda", "delta", "eps", "d_ui", "d_ib", "pathloss_exponent_ur", "pathloss_exponent_rb"});
    SystemConfig &c = spec.scenario;
    c.m = read_count(n, p, "M", c.m);
    c.k = read_count(n, p, "K", c.k);
    const bool has_n1 = static_cast<bool>(n["N1"]);
    const bool has_n2 = static_cast<bool>(n["N2"]);
    if (has_n1 != has_n2)
        throw ConfigError(has_n1 ? "scenario.N2" : "scenario.N1", "N1 and N2 must be given together");
    if (has_n1) {
        c.grid = {read_count(n, p, "N1", 0), read_count(n, p, "N2", 0)};
        spec.explicit_grid = true;
        if (n["N"] && read_count(n, p, "N", 0) != c.grid.size())
            throw ConfigError("scenario.N", "must equal N1 * N2");
    } else if (n["N"]) {
        const std::size_t total = read_count(n, p, "N", 0);
        if (total == 0)
            throw ConfigError("scenario.N", "must be positive");
        c.grid = grid_for(total);
    }
    if (n["power_dbm"])
        c.power_w = dbm_to_watt(as<double>(n["power_dbm"], "scenario.power_dbm"));
    if (n["noise_dbm"])
        c.noise_w = dbm_to_watt(as<double>(n["noise_dbm"], "scenario.noise_dbm"));
    read(n, p, "wavelength", c.wavelength);
    double d_bs = c.d_bs / c.wavelength, d_ris = c.d_ris / c.wavelength;
    read(n, p, "d_bs_over_lambda", d_bs);
    read(n, p, "d_ris_over_lambda", d_ris);
    c.d_bs = d_bs * c.wavelength;
    c.d_ris = d_ris * c.wavelength;
    read(n, p, "delta", c.delta);
    if (const YAML::Node e = n["eps"]) {
        if (e.IsSequence())
            c.eps = as<std::vector<double>>(e, "scenario.eps");
        else
            c.eps.assign(c.k, as<double>(e, "scenario.eps"));
    } else {
        c.eps.assign(c.k, c.eps.empty() ? 10.0 : c.eps.front());
    }
    read(n, p, "d_ui", c.d_ui);
    read(n, p, "d_ib", c.d_ib);
    read(n, p, "pathloss_exponent_ur", c.pl_exp_ur);
    read(n, p, "pathloss_exponent_rb", c.pl_exp_rb);
}

void read_visibility(const YAML::Node &n, ExperimentSpec &spec) {
    const std::string p = "visibility";
    check_keys(n, p, {"mode", "overlap", "min_band_fraction", "min_span_fraction", "regions"});
    VisibilityPlan &v = spec.visibility;
    if (n["mode"]) {
        const auto mode = as<std::string>(n["mode"], "visibility.mode");
        if (mode == "full")
            v.mode = VisibilityPlan::Mode::Full;
        else if (mode == "random")
            v.mode = VisibilityPlan::Mode::Random;
        else if (mode == "explicit")
            v.mode = VisibilityPlan::Mode::Explicit;
        else
            throw ConfigError("visibility.mode", "expected full, random or explicit");
    }
    read(n, p, "overlap", v.random.overlap);
    read(n, p, "min_band_fraction", v.random.min_band_fraction);
    read(n, p, "min_span_fraction", v.random.min_span_fraction);
    if (const YAML::Node regions = n["regions"]) {
        if (!regions.IsSequence())
            throw ConfigError("visibility.regions", "expected a list");
        for (std::size_t j = 0; j < regions.size(); ++j) {
            const YAML::Node r = regions[j];
            const std::string rp = "visibility.regions[" + std::to_string(j) + "]";
            if (r.IsScalar() && as<std::string>(r, rp) == "full") {
                v.regions.emplace_back(FullVr{});
            } else if (r.IsMap() && r["indices"]) {
                check_keys(r, rp, {"indices"});
                IndexVr spec_idx;
                for (long long q : as<std::vector<long long>>(r["indices"], rp + ".indices")) {
                    if (q < 0)
                        throw ConfigError(rp + ".indices", "indices must be non-negative");
                    spec_idx.indices.push_back(static_cast<Eigen::Index>(q));
                }
                v.regions.emplace_back(std::move(spec_idx));
            } else if (r.IsMap()) {
                check_keys(r, rp, {"row0", "col0", "rows", "cols"});
                BlockVr b;
                b.row0 = read_count(r, rp, "row0", 0);
                b.col0 = read_count(r, rp, "col0", 0);
                b.rows = read_count(r, rp, "rows", 0);
                b.cols = read_count(r, rp, "cols", 0);
                v.regions.emplace_back(b);
            } else {
                throw ConfigError(rp, "expected 'full', a block or an index list");
            }
        }
    }
}

void read_sweep(const YAML::Node &n, ExperimentSpec &spec) {
    check_keys(n, "sweep", {"axis", "values"});
    if (n["axis"]) {
        const auto axis = as<std::string>(n["axis"], "sweep.axis");
        const auto parsed = parse_sweep_axis(axis);
        if (!parsed)
            throw ConfigError("sweep.axis", "unknown axis '" + axis + "'");
        spec.axis = *parsed;
    }
    if (n["values"])
        spec.values = as<std::vector<double>>(n["values"], "sweep.values");
}

void read_optimizer(const YAML::Node &n, OptimizerConfig &o) {
    const std::string p = "optimizer";
    check_keys(n, p, {"mu", "tol", "max_iter", "kappa0", "rho", "c1", "max_halvings"});
    read(n, p, "mu", o.mu);
    read(n, p, "tol", o.tol);
    o.max_iter = read_count(n, p, "max_iter", o.max_iter);
    read(n, p, "kappa0", o.kappa0);
    read(n, p, "rho", o.rho);
    read(n, p, "c1", o.c1);
    o.max_halvings = read_count(n, p, "max_halvings", o.max_halvings);
}

void read_ga(const YAML::Node &n, GaConfig &g) {
    const std::string p = "ga";
    check_keys(n, p,
               {"population", "generations", "crossover_rate", "mutation_rate", "mutation_sigma", "elitism",
                "blend_alpha"});
    g.population = read_count(n, p, "population", g.population);
    g.generations = read_count(n, p, "generations", g.generations);
    read(n, p, "crossover_rate", g.crossover_rate);
    read(n, p, "mutation_rate", g.mutation_rate);
    read(n, p, "mutation_sigma", g.mutation_sigma);
    g.elitism = read_count(n, p, "elitism", g.elitism);
    read(n, p, "blend_alpha", g.blend_alpha);
}

void read_replicates(const YAML::Node &n, ExperimentSpec &spec) {
    check_keys(n, "replicates", {"seeds", "count", "first_seed"});
    if (n["seeds"] && (n["count"] || n["first_seed"]))
        throw ConfigError("replicates", "give either seeds or count/first_seed");
    if (n["seeds"]) {
        spec.seeds = as<std::vector<std::uint64_t>>(n["seeds"], "replicates.seeds");
        return;
    }
    const std::size_t count = read_count(n, "replicates", "count", 1);
    const std::size_t first = read_count(n, "replicates", "first_seed", 1);
    spec.seeds.clear();
    for (std::size_t j = 0; j < count; ++j)
        spec.seeds.push_back(first + j);
}

ExperimentSpec parse_root(const YAML::Node &root) {
    ExperimentSpec spec;
    if (!root || root.IsNull())
        return spec;
    check_keys(root, "",
               {"scenario", "visibility", "sweep", "methods", "phase", "monte_carlo", "random_phase", "optimizer",
                "ga", "replicates", "threads", "record_timing", "output"});
    if (root["scenario"])
        read_scenario(root["scenario"], spec);
    else
        spec.scenario.eps.assign(spec.scenario.k, 10.0);
    if (root["visibility"])
        read_visibility(root["visibility"], spec);
    if (root["sweep"])
        read_sweep(root["sweep"], spec);
    if (const YAML::Node m = root["methods"]) {
        spec.methods.clear();
        for (const auto &name : as<std::vector<std::string>>(m, "methods")) {
            const auto parsed = parse_method(name);
            if (!parsed)
                throw ConfigError("methods", "unknown method '" + name + "'");
            spec.methods.push_back(*parsed);
        }
    }
    if (const YAML::Node ph = root["phase"]) {
        const auto parsed = parse_eval_phase(as<std::string>(ph, "phase"));
        if (!parsed)
            throw ConfigError("phase", "expected zeros or random");
        spec.eval_phase = *parsed;
    }
    if (const YAML::Node mc = root["monte_carlo"]) {
        check_keys(mc, "monte_carlo", {"trials"});
        spec.mc_trials = read_count(mc, "monte_carlo", "trials", spec.mc_trials);
    }
    if (const YAML::Node rp = root["random_phase"]) {
        check_keys(rp, "random_phase", {"draws"});
        spec.random_phase_draws = read_count(rp, "random_phase", "draws", spec.random_phase_draws);
    }
    if (root["optimizer"])
        read_optimizer(root["optimizer"], spec.optimizer);
    if (root["ga"])
        read_ga(root["ga"], spec.ga);
    if (root["replicates"])
        read_replicates(root["replicates"], spec);
    spec.threads = read_count(root, "", "threads", spec.threads);
    read(root, "", "record_timing", spec.record_timing);
    if (const YAML::Node out = root["output"]) {
        check_keys(out, "output", {"path", "format"});
        if (out["path"])
            spec.output = as<std::string>(out["path"], "output.path");
        if (out["format"]) {
            const auto parsed = parse_output_format(as<std::string>(out["format"], "output.format"));
            if (!parsed)
                throw ConfigError("output.format", "expected csv or json");
            spec.format = *parsed;
        }
    }
    spec.validate();
    return spec;
}

} // namespace

ExperimentSpec parse_experiment(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception &e) {
        throw ConfigError("<root>", std::string("malformed YAML: ") + e.what());
    }
    return parse_root(root);
}

ExperimentSpec load_experiment(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read experiment file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment(buf.str());
}

} // namespace xlris
