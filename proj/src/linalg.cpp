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

#include "xlris/linalg.hpp"

#include "xlris/errors.hpp"

#include <cmath>
#include <sstream>

namespace xlris {

RMat sym_sqrt(const RMat &r) {
    if (r.rows() != r.cols())
        throw std::invalid_argument("sym_sqrt: matrix must be square");
    if (r.rows() == 0)
        return r;
    Eigen::SelfAdjointEigenSolver<RMat> eig(r);
    if (eig.info() != Eigen::Success)
        throw NumericalError("sym_sqrt: eigendecomposition failed");
    RVec lambda = eig.eigenvalues();
    for (Eigen::Index n = 0; n < lambda.size(); ++n) {
        if (lambda[n] < -kPsdTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "sym_sqrt: matrix is not positive semi-definite (eigenvalue " << lambda[n] << ")";
            throw NumericalError(os.str());
        }
        lambda[n] = std::sqrt(std::max(lambda[n], 0.0));
    }
    const RMat &u = eig.eigenvectors();
    RMat root = u * lambda.asDiagonal() * u.transpose();
    // symmetrize away the rounding residue
    return 0.5 * (root + root.transpose());
}

RMat gather(const RMat &r, std::span<const Eigen::Index> rows, std::span<const Eigen::Index> cols) {
    RMat out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t p = 0; p < rows.size(); ++p)
            out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(c)) = r(rows[p], cols[c]);
    return out;
}

CVec gather(const CVec &v, std::span<const Eigen::Index> idx) {
    CVec out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t q = 0; q < idx.size(); ++q)
        out[static_cast<Eigen::Index>(q)] = v[idx[q]];
    return out;
}

double wrap_phase(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    if (w >= kTwoPi)
        w = 0.0;
    return w;
}

} // namespace xlris
