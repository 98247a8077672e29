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

#ifndef XLRIS_LINALG_HPP
#define XLRIS_LINALG_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace xlris {

using cdouble = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using IndexList = std::vector<Eigen::Index>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cdouble kJ{0.0, 1.0};

/// Eigenvalues in [-kPsdTolerance, 0) are clipped to zero by sym_sqrt.
inline constexpr double kPsdTolerance = 1e-8;

/// Principal square root of a real symmetric positive semi-definite matrix.
/// Throws NumericalError naming the eigenvalue when one lies below
/// -kPsdTolerance.
RMat sym_sqrt(const RMat &r);

/// Sub-matrix r(rows, cols).
RMat gather(const RMat &r, std::span<const Eigen::Index> rows, std::span<const Eigen::Index> cols);
CVec gather(const CVec &v, std::span<const Eigen::Index> idx);

/// Wrap an angle into [0, 2*pi).
double wrap_phase(double theta);

} // namespace xlris

#endif
