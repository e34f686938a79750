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

#include "ceaad/numerics.hpp"

#include <string>

namespace ceaad
{
    CVec vec(const CMat &m)
    {
        return Eigen::Map<const CVec>(m.data(), m.size());
    }

    CMat ivec(const CVec &v, Index rows, Index cols)
    {
        if (v.size() != rows * cols)
            throw DimensionMismatch("ivec: vector of length " + std::to_string(v.size()) +
                                    " cannot fill a " + std::to_string(rows) + "x" +
                                    std::to_string(cols) + " matrix");
        return Eigen::Map<const CMat>(v.data(), rows, cols);
    }

    CVec hadamard(const CVec &a, const CVec &b)
    {
        if (a.size() != b.size())
            throw DimensionMismatch("hadamard: lengths " + std::to_string(a.size()) + " and " +
                                    std::to_string(b.size()) + " differ");
        return a.cwiseProduct(b);
    }

    CVec kron_row(const CVec &f, const CVec &w)
    {
        const Index nt = f.size(), nr = w.size();
        CVec u(nt * nr);
        for (Index n = 0; n < nt; n++)
            u.segment(n * nr, nr) = f(n) * w.conjugate();
        return u;
    }

    LsSolution ls_solve(const CMat &a, const CVec &y)
    {
        const Index n = a.cols();
        if (n == 0)
            return {CVec(0), false};

        Eigen::ColPivHouseholderQR<CMat> qr(a);
        if (a.rows() >= n && qr.rank() == n)
            return {qr.solve(y), false};

        // Degenerate system: ridge-regularized normal equations.
        CMat gram = a.adjoint() * a;
        const double lambda = 1e-10 * gram.trace().real() / static_cast<double>(n);
        if (lambda <= 0.0)
            return {CVec::Zero(n), true}; // a == 0, minimum-norm solution is 0
        gram.diagonal().array() += lambda;
        return {gram.ldlt().solve(a.adjoint() * y), true};
    }

    bool all_finite(const CMat &m)
    {
        return m.allFinite();
    }

    bool all_finite(const CVec &v)
    {
        return v.allFinite();
    }
} // namespace ceaad
