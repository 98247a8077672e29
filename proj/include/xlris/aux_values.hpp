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

#ifndef XLRIS_AUX_VALUES_HPP
#define XLRIS_AUX_VALUES_HPP

#include "xlris/channel.hpp"
#include "xlris/linalg.hpp"
#include "xlris/phase.hpp"

#include <vector>

namespace xlris {

// Auxiliary functions of the closed-form rate. With g_k = Phi D_k hbar_k,
// P_k = Phi R_VR,k Phi^H, R = R_ris and X = Hbar2^H Hbar2 = M a_N a_N^H:
//
//   f_k     = a_N^H g_k                 f_k,1,1  = Tr(X P_k)
//   f_ki,1,2 = Tr(X P_k X P_i)          f_ki,2   = g_k^H R g_i
//   f_k,3,1 = Tr(R P_k)                 f_ki,3,2 = Tr(R P_k R P_i)
//   f_ki,4  = g_k^H R P_i R g_k         f_ki,5   = Tr(X P_k R P_i)
//   f_ki,6  = g_k^H X P_i R g_k         f_ki,7   = g_k^H a_N a_N^H g_i

/// Per-user auxiliary values.
struct UserAux {
    cdouble f;      // f_k
    double f11 = 0; // f_k,1,1
    double f31 = 0; // f_k,3,1
};

/// Auxiliary values of the ordered pair (k, i).
struct PairAux {
    double f12 = 0; // f_ki,1,2
    cdouble f2;     // f_ki,2
    double f32 = 0; // f_ki,3,2
    double f4 = 0;  // f_ki,4
    cdouble f5;     // f_ki,5
    cdouble f6;     // f_ki,6
    cdouble f7;     // f_ki,7
};

/// All auxiliary values for every user and ordered pair, pair(k, i) stored
/// row-major.
struct AuxTable {
    std::size_t users = 0;
    std::vector<UserAux> user;
    std::vector<PairAux> pairs;

    const PairAux &pair(std::size_t k, std::size_t i) const { return pairs[k * users + i]; }
    PairAux &pair(std::size_t k, std::size_t i) { return pairs[k * users + i]; }
};

/// The ten auxiliary values seen by the term formulas for one (k, i).
struct AuxValues {
    cdouble f_k;
    cdouble f_k_1_1;
    cdouble f_ki_1_2;
    cdouble f_ki_2;
    cdouble f_k_3_1;
    cdouble f_ki_3_2;
    cdouble f_ki_4;
    cdouble f_ki_5;
    cdouble f_ki_6;
    cdouble f_ki_7;
};

/// Full-dimension evaluation over N x N matrices.
AuxTable aux_table(const StatisticalChannel &stat, const PhaseConfig &phase);
AuxValues aux_values(const StatisticalChannel &stat, const PhaseConfig &phase, std::size_t k, std::size_t i);
AuxValues aux_values(const AuxTable &table, std::size_t k, std::size_t i);

/// Quantities restricted to the visibility regions. Entry q of each reduced
/// object is the full object at index nu_k[q].
struct ReducedChannel {
    std::size_t m = 0;
    std::vector<IndexList> nu;
    std::vector<CVec> a_n;   // a_N,k*
    std::vector<CVec> hbar;  // hbar_k*
    std::vector<CVec> phi;   // diagonal of Phi_k*
    std::vector<RMat> r_vr;  // R_VR,k*
    std::vector<RMat> r_ris; // R_ris,k*,i* at [k * K + i], rows nu_k, cols nu_i
    CVec a_m;

    std::size_t users() const noexcept { return nu.size(); }
    const RMat &r_cross(std::size_t k, std::size_t i) const { return r_ris[k * users() + i]; }
    /// Hbar2,k* = a_M a_N,k*^H.
    CMat hbar2(std::size_t k) const { return a_m * a_n[k].adjoint(); }
};

ReducedChannel reduce(const StatisticalChannel &stat, const PhaseConfig &phase);
/// Same reduced geometry with a different phase vector (reuses the index sets
/// and correlation blocks).
void update_phase(ReducedChannel &reduced, const PhaseConfig &phase);

AuxTable aux_table_reduced(const ReducedChannel &reduced);

} // namespace xlris

#endif
