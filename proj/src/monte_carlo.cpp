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

#include "xlris/monte_carlo.hpp"

#include "xlris/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xlris {

namespace {

// Draws q_1..q_K for one realization without forming H2 explicitly.
class CascadeSampler {
  public:
    CascadeSampler(const StatisticalChannel &stat, const PhaseConfig &phase) : stat_(&stat) {
        if (phase.size() != stat.n())
            throw std::invalid_argument("monte carlo: phase vector length must equal N");
        c_ = phase.diagonal();
        s_phi_ = stat.r_ris_sqrt().cast<cdouble>();
        los_b_ = std::sqrt(stat.beta() * rician_ratio(stat.delta(), 1, 1));
        nlos_b_ = std::sqrt(stat.beta() * rician_ratio(stat.delta(), 0, 1));
        for (std::size_t k = 0; k < stat.k(); ++k) {
            const auto idx = stat.vr(k).indices();
            idx_.emplace_back(idx.begin(), idx.end());
            root_.push_back(gather(stat.r_vr_sqrt(k), idx, idx).cast<cdouble>());
            const double a = std::sqrt(stat.alpha(k));
            los_.push_back(a * std::sqrt(rician_ratio(stat.eps(k), 1, 1)));
            nlos_.push_back(a * std::sqrt(rician_ratio(stat.eps(k), 0, 1)));
            los_part_.push_back(los_.back() * stat.vr(k).mask().cast<cdouble>().cwiseProduct(stat.hbar(k)));
        }
    }

    void draw(std::mt19937_64 &rng, std::vector<CVec> &q) const {
        const auto n = static_cast<Eigen::Index>(stat_->n());
        const auto m = static_cast<Eigen::Index>(stat_->m());
        const CMat g = complex_gaussian(m, n, rng);
        q.resize(stat_->k());
        for (std::size_t k = 0; k < stat_->k(); ++k) {
            CVec h = los_part_[k];
            const CVec x = complex_gaussian(static_cast<Eigen::Index>(idx_[k].size()), rng);
            if (nlos_[k] > 0.0) {
                const CVec t = root_[k] * x;
                for (std::size_t p = 0; p < idx_[k].size(); ++p)
                    h[idx_[k][p]] += nlos_[k] * t[static_cast<Eigen::Index>(p)];
            }
            const CVec phi_h = c_.cwiseProduct(h);
            q[k] = (los_b_ * stat_->a_n().dot(phi_h)) * stat_->a_m();
            if (nlos_b_ > 0.0)
                q[k].noalias() += nlos_b_ * (g * (s_phi_ * phi_h));
        }
    }

  private:
    const StatisticalChannel *stat_;
    CVec c_;
    CMat s_phi_;
    double los_b_ = 0.0, nlos_b_ = 0.0;
    std::vector<IndexList> idx_;
    std::vector<CMat> root_;
    std::vector<double> los_, nlos_;
    std::vector<CVec> los_part_;
};

std::mt19937_64 block_rng(std::uint64_t seed, std::size_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

// Running sum and sum of squares per statistic.
struct Accumulator {
    std::vector<double> sum, sq;
    explicit Accumulator(std::size_t n = 0) : sum(n, 0.0), sq(n, 0.0) {}
    void add(std::size_t j, double v) {
        sum[j] += v;
        sq[j] += v * v;
    }
    void merge(const Accumulator &o) {
        for (std::size_t j = 0; j < sum.size(); ++j) {
            sum[j] += o.sum[j];
            sq[j] += o.sq[j];
        }
    }
    double mean(std::size_t j, double n) const { return sum[j] / n; }
    double std_error(std::size_t j, double n) const {
        if (n < 2.0)
            return 0.0;
        const double mu = sum[j] / n;
        const double var = std::max(0.0, (sq[j] - n * mu * mu) / (n - 1.0));
        return std::sqrt(var / n);
    }
};

// Runs `per_trial(q, acc)` over all trials, block by block.
template <class PerTrial>
Accumulator run_blocks(const CascadeSampler &sampler, std::size_t stats, const MonteCarloOptions &opts,
                       PerTrial per_trial) {
    if (opts.trials == 0)
        throw std::invalid_argument("monte carlo: trials must be positive");
    const std::size_t blocks = (opts.trials + kMonteCarloBlock - 1) / kMonteCarloBlock;
    std::vector<Accumulator> partial(blocks, Accumulator(stats));
    parallel_for(blocks, opts.threads, [&](std::size_t b) {
        std::mt19937_64 rng = block_rng(opts.seed, b);
        const std::size_t begin = b * kMonteCarloBlock;
        const std::size_t end = std::min(opts.trials, begin + kMonteCarloBlock);
        std::vector<CVec> q;
        for (std::size_t t = begin; t < end; ++t) {
            sampler.draw(rng, q);
            per_trial(q, partial[b]);
        }
    });
    Accumulator total(stats);
    for (const auto &p : partial)
        total.merge(p);
    return total;
}

} // namespace

RateReport monte_carlo_report(const StatisticalChannel &stat, const PhaseConfig &phase, double power, double noise,
                              const MonteCarloOptions &opts) {
    const CascadeSampler sampler(stat, phase);
    const std::size_t users = stat.k();
    // layout: rate_k, ||q_k||^2, ||q_k||^4, sum_i |q_k^H q_i|^2
    const Accumulator acc = run_blocks(sampler, 4 * users, opts, [&](const std::vector<CVec> &q, Accumulator &a) {
        for (std::size_t k = 0; k < users; ++k) {
            const double n2 = q[k].squaredNorm();
            double inter = 0.0;
            for (std::size_t i = 0; i < users; ++i)
                if (i != k)
                    inter += std::norm(q[k].dot(q[i]));
            const double sinr = power * n2 * n2 / (power * inter + noise * n2);
            a.add(k, std::log2(1.0 + sinr));
            a.add(users + k, n2);
            a.add(2 * users + k, n2 * n2);
            a.add(3 * users + k, inter);
        }
    });

    const double n = static_cast<double>(opts.trials);
    RateReport rep;
    rep.method = RateMethod::MonteCarlo;
    rep.trials = opts.trials;
    rep.users.resize(users);
    for (std::size_t k = 0; k < users; ++k) {
        UserRate &u = rep.users[k];
        u.rate = acc.mean(k, n);
        u.std_error = acc.std_error(k, n);
        u.e_noise = acc.mean(users + k, n);
        u.e_signal = acc.mean(2 * users + k, n);
        u.i_sum = acc.mean(3 * users + k, n);
        u.sinr = std::exp2(u.rate) - 1.0;
    }
    rep.min_rate = std::min_element(rep.users.begin(), rep.users.end(), [](const UserRate &a, const UserRate &b) {
                       return a.rate < b.rate;
                   })->rate;
    return rep;
}

MomentEstimate monte_carlo_moments(const StatisticalChannel &stat, const PhaseConfig &phase,
                                   const MonteCarloOptions &opts) {
    const CascadeSampler sampler(stat, phase);
    const std::size_t users = stat.k();
    // layout: ||q_k||^2, ||q_k||^4, |q_k^H q_i|^2 (K x K)
    const Accumulator acc =
        run_blocks(sampler, 2 * users + users * users, opts, [&](const std::vector<CVec> &q, Accumulator &a) {
            for (std::size_t k = 0; k < users; ++k) {
                const double n2 = q[k].squaredNorm();
                a.add(k, n2);
                a.add(users + k, n2 * n2);
                for (std::size_t i = 0; i < users; ++i)
                    a.add(2 * users + k * users + i, std::norm(q[k].dot(q[i])));
            }
        });
    const double n = static_cast<double>(opts.trials);
    MomentEstimate est;
    est.users = users;
    for (std::size_t k = 0; k < users; ++k) {
        est.norm2.push_back(acc.mean(k, n));
        est.norm2_se.push_back(acc.std_error(k, n));
        est.norm4.push_back(acc.mean(users + k, n));
        est.norm4_se.push_back(acc.std_error(users + k, n));
    }
    for (std::size_t j = 0; j < users * users; ++j) {
        est.cross.push_back(acc.mean(2 * users + j, n));
        est.cross_se.push_back(acc.std_error(2 * users + j, n));
    }
    return est;
}

CMat lemma_moment_closed_form(const CMat &a, const CMat &b, const CMat &w) {
    if (a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols() || w.rows() != w.cols())
        throw std::invalid_argument("lemma_moment_closed_form: dimension mismatch");
    const auto n = w.rows();
    return w.trace() * (a * b).trace() * CMat::Identity(n, n) + a.trace() * b.trace() * w;
}

double lemma_moment_check(const CMat &a, const CMat &b, const CMat &w, std::size_t trials, std::mt19937_64 &rng) {
    if (trials == 0)
        throw std::invalid_argument("lemma_moment_check: trials must be positive");
    const CMat closed = lemma_moment_closed_form(a, b, w);
    const auto m = a.rows();
    const auto n = w.rows();
    CMat sum = CMat::Zero(n, n);
    for (std::size_t t = 0; t < trials; ++t) {
        const CMat h = complex_gaussian(m, n, rng);
        const CMat left = h.adjoint() * a * h;
        const CMat right = h.adjoint() * b * h;
        sum.noalias() += left * w * right;
    }
    const CMat est = sum / static_cast<double>(trials);
    const double ref = closed.norm();
    const double err = (est - closed).norm();
    return ref > 0.0 ? err / ref : err;
}

} // namespace xlris
