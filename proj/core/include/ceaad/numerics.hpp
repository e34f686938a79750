// SPDX-License-Identifier: Apache-2.0
//
// ceaad - cross-entropy diagnosis of blocked antennas in mmWave MIMO arrays
// Copyright (C) 2026 ceaad contributors
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

#ifndef CEAAD_NUMERICS_HPP
#define CEAAD_NUMERICS_HPP

#include <complex>

#include <Eigen/Dense>

#include "ceaad/errors.hpp"

namespace ceaad
{
    using cplx = std::complex<double>;
    using CMat = Eigen::MatrixXcd; // column-major
    using CVec = Eigen::VectorXcd;
    using RMat = Eigen::MatrixXd;
    using RVec = Eigen::VectorXd;
    using Index = Eigen::Index;

    // Column-major stacking of a matrix into a vector. Storage is already
    // column-major, so this is a straight copy of the underlying buffer.
    CVec vec(const CMat &m);

    // Inverse of vec. Throws DimensionMismatch unless v.size() == rows*cols.
    CMat ivec(const CVec &v, Index rows, Index cols);

    // Elementwise product. Throws DimensionMismatch on unequal lengths.
    CVec hadamard(const CVec &a, const CVec &b);

    // Row operator u = f^T (x) w^H as a dense vector, laid out so that
    // u.dot..  more precisely  sum_i u[i]*vec(Q)[i] = w^H Q f  for every
    // w.size() x f.size() matrix Q. Entry n*w.size()+m equals f[n]*conj(w[m]).
    CVec kron_row(const CVec &f, const CVec &w);

    struct LsSolution
    {
        CVec x;
        bool regularized = false; // true when the ridge fallback was taken
    };

    // Least-squares solve of A x ~= y. Full-column-rank systems go through
    // column-pivoted QR and match (A^H A)^{-1} A^H y. Rank-deficient or
    // underdetermined systems fall back to ridge-regularized normal equations
    // with lambda = 1e-10 * trace(A^H A) / cols, approximating the
    // minimum-norm solution; the fallback is flagged in the result so callers
    // can tell a well-posed fit from a degenerate one.
    LsSolution ls_solve(const CMat &a, const CVec &y);

    bool all_finite(const CMat &m);
    bool all_finite(const CVec &v);
} // namespace ceaad

#endif
