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

#ifndef XLRIS_GRADIENTS_HPP
#define XLRIS_GRADIENTS_HPP

#include "xlris/aux_values.hpp"
#include "xlris/channel.hpp"
#include "xlris/phase.hpp"

#include <vector>

namespace xlris {

/// d Tr{A Phi B Phi^H} / d theta = j diag(Phi B Phi^H A) - j diag(A Phi B Phi^H).
CVec grad_f_a_complex(const CMat &a, const CMat &b, const PhaseConfig &phase);

/// Real part of grad_f_a_complex. Throws NumericalError when the imaginary
/// part exceeds 1e-10 (relative to the largest entry, floored at 1).
RVec grad_f_a(const CMat &a, const CMat &b, const PhaseConfig &phase);

// Gradients of the auxiliary functions. Complex-valued functions carry
// complex gradients d Re f + j d Im f.
struct UserAuxGrad {
    CVec f;   // f_k'
    RVec f11; // f_k,1,1'
    RVec f31; // f_k,3,1'
};

struct PairAuxGrad {
    RVec f12; // f_ki,1,2'
    CVec f2;  // f_ki,2'
    RVec f32; // f_ki,3,2'
    RVec f4;  // f_ki,4'
    CVec f5;  // f_ki,5'
    CVec f6;  // f_ki,6'
    CVec f7;  // f_ki,7'
};

struct AuxGradTable {
    std::size_t users = 0;
    std::vector<UserAuxGrad> user;
    std::vector<PairAuxGrad> pairs;

    const PairAuxGrad &pair(std::size_t k, std::size_t i) const { return pairs[k * users + i]; }
    PairAuxGrad &pair(std::size_t k, std::size_t i) { return pairs[k * users + i]; }
};

/// Computed on the visibility-region blocks and scattered back to length N;
/// entries outside every region are zero.
AuxGradTable aux_grad_table(const ReducedChannel &reduced, std::size_t n);
AuxGradTable aux_grad_table(const StatisticalChannel &stat, const PhaseConfig &phase);

/// The gradients named per (k, i), including the swapped and conjugated ones.
struct AuxGradients {
    CVec f_k, f_k_1_1, f_ki_1_2, f_ki_2, f_k_3_1, f_ki_3_2;
    CVec f_ki_4, f_ik_4, f_ki_5, f_ik_5, f_ki_6, f_ik_6, f_ik_6_conj, f_ki_7;
};

AuxGradients aux_gradients(const AuxGradTable &table, std::size_t k, std::size_t i);
AuxGradients aux_gradients(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k, std::size_t i);

RVec grad_noise(const StatisticalChannel &stat, const AuxTable &aux, const AuxGradTable &grad, std::size_t k);
RVec grad_signal(const StatisticalChannel &stat, const AuxTable &aux, const AuxGradTable &grad, std::size_t k);
/// Requires i != k.
RVec grad_interference(const StatisticalChannel &stat, const AuxTable &aux, const AuxGradTable &grad, std::size_t k,
                       std::size_t i);

struct TermGradients {
    RVec noise;        // of E{||q_k||^2}
    RVec signal;       // of E{||q_k||^4}
    RVec interference; // of E{|q_k^H q_i|^2}; zero when k == i
};

TermGradients grad_terms(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k, std::size_t i);

/// Smoothed min-rate objective together with its gradient.
struct ObjectiveEval {
    double value = 0.0;
    double min_rate = 0.0;
    std::vector<double> rates;
    RVec gradient;
};

/// Evaluates through the reduced representation; `reduced` must already hold
/// the phase of interest.
ObjectiveEval objective_with_gradient(const ReducedChannel &reduced, const StatisticalChannel &stat, double power,
                                      double noise, double mu);

RVec grad_objective(const StatisticalChannel &stat, const PhaseConfig &phase, double power, double noise, double mu);

} // namespace xlris

#endif
