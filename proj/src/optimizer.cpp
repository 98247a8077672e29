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

#include "xlris/optimizer.hpp"

#include "xlris/errors.hpp"
#include "xlris/gradients.hpp"
#include "xlris/rate.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace xlris {

void OptimizerConfig::validate() const {
    if (!(mu > 0.0))
        throw std::invalid_argument("optimizer: mu must be positive");
    if (!(tol > 0.0))
        throw std::invalid_argument("optimizer: tol must be positive");
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("optimizer: rho must lie in (0, 1)");
    if (!(c1 > 0.0 && c1 < 1.0))
        throw std::invalid_argument("optimizer: c1 must lie in (0, 1)");
    if (!(kappa0 > 0.0))
        throw std::invalid_argument("optimizer: kappa0 must be positive");
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
    case StopReason::Tolerance:
        return "tolerance";
    case StopReason::ZeroGradient:
        return "zero-gradient";
    case StopReason::MaxIterations:
        return "max-iterations";
    }
    return "unknown";
}

double backtracking_step(const RVec &theta, double f_theta, const RVec &grad,
                         const std::function<double(const RVec &)> &objective, const OptimizerConfig &cfg) {
    const double g2 = grad.squaredNorm();
    if (!(g2 > 0.0))
        throw std::invalid_argument("backtracking_step: gradient must be nonzero");
    double kappa = cfg.kappa0;
    for (std::size_t m = 0; m <= cfg.max_halvings; ++m, kappa *= cfg.rho) {
        const double f = objective(theta + kappa * grad);
        if (!std::isfinite(f))
            throw NumericalError("backtracking_step: objective is not finite");
        if (f >= f_theta + cfg.c1 * kappa * g2)
            return kappa;
    }
    return 0.0;
}

double smoothed_objective(const ReducedChannel &reduced, const StatisticalChannel &stat, const RVec &theta,
                          double power, double noise, double mu) {
    ReducedChannel local = reduced;
    update_phase(local, PhaseConfig(theta));
    return smoothed_min(closed_form_report_reduced(local, stat, power, noise).rates(), mu);
}

RVec random_phases(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    RVec theta(static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < theta.size(); ++j)
        theta[j] = u(rng);
    return theta;
}

namespace {

bool negligible(const RVec &g, double f) { return g.lpNorm<Eigen::Infinity>() <= 1e-12 * std::max(1.0, std::abs(f)); }

} // namespace

OptimizeResult optimize(const StatisticalChannel &stat, const OptimizerConfig &cfg, double power, double noise,
                        std::optional<RVec> theta0) {
    cfg.validate();
    const std::size_t n = stat.n();
    OptimizerState st;
    st.theta = theta0 ? *theta0 : random_phases(n, cfg.seed);
    if (static_cast<std::size_t>(st.theta.size()) != n)
        throw std::invalid_argument("optimize: initial phase vector length must equal N");

    ReducedChannel red = reduce(stat, PhaseConfig(st.theta));
    auto evaluate = [&](const RVec &theta) {
        update_phase(red, PhaseConfig(theta));
        return objective_with_gradient(red, stat, power, noise, cfg.mu);
    };
    ReducedChannel line_red = red;
    auto value_only = [&](const RVec &theta) {
        update_phase(line_red, PhaseConfig(theta));
        return smoothed_min(closed_form_report_reduced(line_red, stat, power, noise).rates(), cfg.mu);
    };

    OptimizeResult out;
    ObjectiveEval ev = evaluate(st.theta);
    out.initial_value = ev.value;
    st.x_prev = st.theta;
    st.best_theta = st.theta;
    st.best_value = ev.value;
    double best_min_rate = ev.min_rate;

    out.reason = StopReason::MaxIterations;
    for (st.i = 0; st.i < cfg.max_iter; ++st.i) {
        TraceEntry entry{st.i, ev.value, ev.min_rate, 0.0, ev.gradient.norm()};
        if (negligible(ev.gradient, ev.value)) {
            st.trace.push_back(entry);
            out.best_history.push_back(st.best_value);
            out.reason = StopReason::ZeroGradient;
            ++st.i;
            break;
        }
        st.kappa = backtracking_step(st.theta, ev.value, ev.gradient, value_only, cfg);
        entry.kappa = st.kappa;
        st.x = st.theta + st.kappa * ev.gradient;
        const double e_next = next_momentum(st.e);
        const RVec theta_next = st.x + ((st.e - 1.0) / e_next) * (st.x - st.x_prev);
        st.x_prev = st.x;
        st.e = e_next;

        if (st.kappa > 0.0) {
            const double fx = value_only(st.x);
            if (fx > st.best_value) {
                st.best_value = fx;
                st.best_theta = st.x;
                best_min_rate = std::numeric_limits<double>::quiet_NaN();
            }
        }
        ObjectiveEval next = evaluate(theta_next);
        if (next.value > st.best_value) {
            st.best_value = next.value;
            st.best_theta = theta_next;
            best_min_rate = next.min_rate;
        }
        st.trace.push_back(entry);
        out.best_history.push_back(st.best_value);

        const double improvement = next.value - ev.value;
        st.theta = theta_next;
        ev = std::move(next);
        // large drops come from the momentum step; the incumbent keeps the best point
        if (std::abs(improvement) < cfg.tol) {
            out.reason = StopReason::Tolerance;
            ++st.i;
            break;
        }
    }

    out.iterations = st.i;
    out.theta_star = PhaseConfig(st.best_theta).theta();
    out.value = st.best_value;
    if (std::isnan(best_min_rate)) {
        update_phase(line_red, PhaseConfig(out.theta_star));
        best_min_rate = closed_form_report_reduced(line_red, stat, power, noise).min_rate;
    }
    out.min_rate = best_min_rate;
    out.trace = std::move(st.trace);
    return out;
}

} // namespace xlris
