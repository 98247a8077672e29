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

#ifndef XLRIS_RATE_HPP
#define XLRIS_RATE_HPP

#include "xlris/aux_values.hpp"
#include "xlris/channel.hpp"
#include "xlris/phase.hpp"

#include <string_view>
#include <vector>

namespace xlris {

/// Products c_k delta^a eps_k^b and friends, written through
/// beta alpha_k and rician_ratio so the LoS limits stay finite.
class TermCoefficients {
  public:
    explicit TermCoefficients(const StatisticalChannel &stat) : stat_(&stat) {}

    /// c_k delta^a eps_k^b
    double c1(std::size_t k, int a, int b) const {
        return stat_->gain(k) * rician_ratio(stat_->delta(), a, 1) * rician_ratio(stat_->eps(k), b, 1);
    }
    /// c_k^2 delta^a eps_k^b
    double c2(std::size_t k, int a, int b) const {
        const double g = stat_->gain(k);
        return g * g * rician_ratio(stat_->delta(), a, 2) * rician_ratio(stat_->eps(k), b, 2);
    }
    /// c_k c_i delta^a eps_k^b eps_i^c
    double cc(std::size_t k, std::size_t i, int a, int b, int c) const {
        return stat_->gain(k) * stat_->gain(i) * rician_ratio(stat_->delta(), a, 2) * rician_ratio(stat_->eps(k), b, 1) *
               rician_ratio(stat_->eps(i), c, 1);
    }

  private:
    const StatisticalChannel *stat_;
};

/// E{||q_k||^2}.
double noise_term(const StatisticalChannel &stat, const AuxTable &aux, std::size_t k);
/// E{||q_k||^4}.
double signal_term(const StatisticalChannel &stat, const AuxTable &aux, std::size_t k);
/// E{|q_k^H q_i|^2}, i != k.
double interference_term(const StatisticalChannel &stat, const AuxTable &aux, std::size_t k, std::size_t i);

double noise_term(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k);
double signal_term(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k);
double interference_term(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k, std::size_t i);

enum class RateMethod { ClosedForm, ClosedFormReduced, MonteCarlo };

std::string_view to_string(RateMethod method);

struct UserRate {
    double e_noise = 0.0;
    double e_signal = 0.0;
    double i_sum = 0.0;
    double sinr = 0.0;
    double rate = 0.0;      // bits/s/Hz
    double std_error = 0.0; // Monte Carlo only
};

struct RateReport {
    RateMethod method = RateMethod::ClosedForm;
    std::vector<UserRate> users;
    double min_rate = 0.0;
    std::size_t trials = 0; // Monte Carlo only

    std::vector<double> rates() const;
};

/// SINR_k = p E_signal / (p sum_i I_ki + sigma2 E_noise) for every user.
RateReport assemble_report(const StatisticalChannel &stat, const AuxTable &aux, double power, double noise,
                           RateMethod method);

RateReport closed_form_report(const StatisticalChannel &stat, const PhaseConfig &phase, double power, double noise);
RateReport closed_form_report_reduced(const ReducedChannel &reduced, const StatisticalChannel &stat, double power,
                                      double noise);

} // namespace xlris

#endif
