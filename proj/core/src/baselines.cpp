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

#include "ceaad/baselines.hpp"

#include <algorithm>
#include <vector>

#include "ce_internal.hpp"

namespace ceaad
{
    OmpResult omp(const CVec &y, const CMat &F, Index max_atoms, double residual_threshold)
    {
        const Index k = F.rows(), n = F.cols();
        const Index budget = std::min(max_atoms, k);

        OmpResult result;
        result.q_hat = CVec::Zero(n);
        std::vector<bool> used(n, false);
        std::vector<Index> picked;
        CVec residual = y;
        CVec q_sub;

        while (static_cast<Index>(picked.size()) < budget &&
               residual.norm() > residual_threshold)
        {
            Index best = -1;
            double best_corr = 0.0;
            for (Index j = 0; j < n; j++)
            {
                if (used[j])
                    continue;
                const double corr = std::abs(F.col(j).dot(residual));
                if (corr > best_corr)
                {
                    best_corr = corr;
                    best = j;
                }
            }
            if (best < 0)
                break; // residual orthogonal to every remaining column
            used[best] = true;
            picked.push_back(best);

            const CMat f_sub = detail::gather_columns(F, picked);
            q_sub = ls_solve(f_sub, y).x;
            residual = y - f_sub * q_sub;
            result.residual_trace.push_back(residual.norm());
        }

        for (size_t i = 0; i < picked.size(); i++)
            result.q_hat(picked[i]) = q_sub(static_cast<Index>(i));
        result.support = std::move(picked);
        std::sort(result.support.begin(), result.support.end());
        return result;
    }

    CVec oracle_ls(const CVec &y, const CMat &F, std::span<const Index> true_support)
    {
        CVec q = CVec::Zero(F.cols());
        if (true_support.empty())
            return q;
        const CVec q_sub = ls_solve(detail::gather_columns(F, true_support), y).x;
        for (size_t i = 0; i < true_support.size(); i++)
            q(true_support[i]) = q_sub(static_cast<Index>(i));
        return q;
    }

    DiagnosisReport plain_ce(const CVec &y, const CMat &F, const CVec &h, Index rows, Index cols,
                             CeConfig config, Rng &rng)
    {
        config.block_rows = 1;
        config.block_cols = 1;
        return run_ce_aad(y, F, h, rows, cols, config, rng);
    }
} // namespace ceaad
