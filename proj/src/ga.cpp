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

#include "xlris/ga.hpp"

#include "xlris/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

namespace xlris {

void GaConfig::validate() const {
    if (population < 2)
        throw std::invalid_argument("ga: population must be at least 2");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw std::invalid_argument("ga: crossover_rate must lie in [0, 1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw std::invalid_argument("ga: mutation_rate must lie in [0, 1]");
    if (!(mutation_sigma >= 0.0))
        throw std::invalid_argument("ga: mutation_sigma must be non-negative");
    if (elitism >= population)
        throw std::invalid_argument("ga: elitism must be smaller than the population");
    if (!(blend_alpha >= 0.0))
        throw std::invalid_argument("ga: blend_alpha must be non-negative");
}

GaResult ga_optimize(const std::function<double(const RVec &)> &objective, std::size_t n, const GaConfig &cfg) {
    cfg.validate();
    if (n == 0)
        throw std::invalid_argument("ga: dimension must be positive");
    const auto start = std::chrono::steady_clock::now();
    const auto dim = static_cast<Eigen::Index>(n);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, cfg.mutation_sigma);

    std::vector<RVec> pop(cfg.population, RVec(dim));
    for (auto &ind : pop)
        for (Eigen::Index j = 0; j < dim; ++j)
            ind[j] = kTwoPi * uniform(rng);
    std::vector<double> fit(cfg.population);

    GaResult out;
    auto evaluate = [&](std::size_t first) {
        parallel_for(pop.size() - first, cfg.threads, [&](std::size_t j) { fit[first + j] = objective(pop[first + j]); });
        out.evaluations += pop.size() - first;
    };
    evaluate(0);

    std::size_t best = static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
    out.theta_star = pop[best];
    out.best_value = fit[best];
    out.best_history.push_back(out.best_value);

    std::vector<std::size_t> order(cfg.population);
    auto tournament = [&]() -> const RVec & {
        const std::size_t a = static_cast<std::size_t>(uniform(rng) * static_cast<double>(cfg.population)) % cfg.population;
        const std::size_t b = static_cast<std::size_t>(uniform(rng) * static_cast<double>(cfg.population)) % cfg.population;
        return fit[a] >= fit[b] ? pop[a] : pop[b];
    };

    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });

        std::vector<RVec> next;
        std::vector<double> next_fit;
        next.reserve(cfg.population);
        for (std::size_t e = 0; e < cfg.elitism; ++e) {
            next.push_back(pop[order[e]]);
            next_fit.push_back(fit[order[e]]);
        }
        while (next.size() < cfg.population) {
            RVec c1 = tournament();
            RVec c2 = tournament();
            if (uniform(rng) < cfg.crossover_rate) {
                for (Eigen::Index j = 0; j < dim; ++j) {
                    const double g = -cfg.blend_alpha + (1.0 + 2.0 * cfg.blend_alpha) * uniform(rng);
                    const double a = c1[j], b = c2[j];
                    c1[j] = a + g * (b - a);
                    c2[j] = b + g * (a - b);
                }
            }
            for (RVec *c : {&c1, &c2}) {
                for (Eigen::Index j = 0; j < dim; ++j) {
                    if (uniform(rng) < cfg.mutation_rate)
                        (*c)[j] += gauss(rng);
                    (*c)[j] = wrap_phase((*c)[j]);
                }
                if (next.size() < cfg.population)
                    next.push_back(std::move(*c));
            }
        }
        pop = std::move(next);
        fit.assign(cfg.population, 0.0);
        std::copy(next_fit.begin(), next_fit.end(), fit.begin());
        evaluate(cfg.elitism);

        best = static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
        if (fit[best] > out.best_value) {
            out.best_value = fit[best];
            out.theta_star = pop[best];
        }
        out.best_history.push_back(out.best_value);
    }

    for (Eigen::Index j = 0; j < dim; ++j)
        out.theta_star[j] = wrap_phase(out.theta_star[j]);
    out.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace xlris
