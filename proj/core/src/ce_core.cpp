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

#include "ceaad/ce_core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ce_internal.hpp"

namespace ceaad
{
    void CeConfig::validate() const
    {
        if (n_candidates < 1)
            throw Error("n_candidates must be >= 1");
        if (n_elites < 1 || n_elites > n_candidates)
            throw Error("n_elites must satisfy 1 <= n_elites <= n_candidates");
        if (n_iterations < 1)
            throw Error("n_iterations must be >= 1");
        if (epsilon < 0.0)
            throw Error("epsilon must be >= 0");
        if (block_rows < 1 || block_cols < 1)
            throw Error("block dimensions must be >= 1");
        if (!(smoothing_alpha > 0.0 && smoothing_alpha <= 1.0))
            throw Error("smoothing_alpha must lie in (0, 1]");
    }

    BlockProbability init_prob(Index rows, Index cols, Index block_rows, Index block_cols)
    {
        if (block_rows < 1 || block_cols < 1 || rows % block_rows != 0 || cols % block_cols != 0)
            throw BlockShapeMismatch("blocks of " + std::to_string(block_rows) + "x" +
                                     std::to_string(block_cols) + " do not tile a " +
                                     std::to_string(rows) + "x" + std::to_string(cols) + " grid");
        BlockProbability bp;
        bp.rows = rows;
        bp.cols = cols;
        bp.block_rows = block_rows;
        bp.block_cols = block_cols;
        bp.p = RMat::Constant(rows / block_rows, cols / block_cols, 0.5);
        return bp;
    }

    std::vector<CandidateMask> sample_candidates(const BlockProbability &prob, int n_candidates,
                                                 Rng &rng)
    {
        const Index gr = prob.grid_rows(), gc = prob.grid_cols();
        std::vector<CandidateMask> out(n_candidates);
        for (auto &cand : out)
        {
            cand.blocks.resize(gr, gc);
            for (Index j = 0; j < gc; j++)
                for (Index i = 0; i < gr; i++)
                    cand.blocks(i, j) = rng.bernoulli(prob.p(i, j)) ? 1 : 0;
            // Expand to antenna indices in ascending vec order.
            for (Index n = 0; n < prob.cols; n++)
                for (Index m = 0; m < prob.rows; m++)
                    if (cand.blocks(m / prob.block_rows, n / prob.block_cols) != 0)
                        cand.support.push_back(n * prob.rows + m);
        }
        return out;
    }

    ObjectiveResult objective(const CVec &y, const CMat &F, std::span<const Index> support,
                              double epsilon, BlockageMode mode, const CVec &h)
    {
        ObjectiveResult res;
        if (support.empty())
        {
            res.zeta = y.norm();
            return res;
        }

        const CMat f_sub = detail::gather_columns(F, support);
        if (mode == BlockageMode::complete)
        {
            res.q_sub = -detail::gather(h, support);
        }
        else
        {
            LsSolution ls = ls_solve(f_sub, y);
            res.q_sub = std::move(ls.x);
            res.regularized = ls.regularized;
        }
        res.zeta = (y - f_sub * res.q_sub).norm() +
                   epsilon * static_cast<double>(support.size());
        return res;
    }

    std::vector<int> select_elites(std::span<const double> zetas, int n_elites)
    {
        if (n_elites < 0 || static_cast<size_t>(n_elites) > zetas.size())
            throw Error("select_elites: elite count " + std::to_string(n_elites) +
                        " exceeds candidate count " + std::to_string(zetas.size()));
        std::vector<int> order(zetas.size());
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + n_elites, order.end(),
                          [&](int a, int b)
                          { return zetas[a] < zetas[b] || (zetas[a] == zetas[b] && a < b); });
        order.resize(n_elites);
        return order;
    }

    RMat elite_update(const std::vector<CandidateMask> &candidates, std::span<const int> elites)
    {
        if (elites.empty())
            throw Error("elite_update: empty elite list");
        RMat acc = RMat::Zero(candidates[elites[0]].blocks.rows(),
                              candidates[elites[0]].blocks.cols());
        for (int e : elites)
            acc += candidates[e].blocks.cast<double>().matrix();
        return acc / static_cast<double>(elites.size());
    }

    DiagnosisReport run_ce_aad(const CVec &y, const CMat &F, const CVec &h, Index rows, Index cols,
                               const CeConfig &config, Rng &rng)
    {
        config.validate();
        if (F.cols() != rows * cols || h.size() != rows * cols)
            throw DimensionMismatch("run_ce_aad: operator has " + std::to_string(F.cols()) +
                                    " columns, channel " + std::to_string(h.size()) +
                                    " entries, grid is " + std::to_string(rows) + "x" +
                                    std::to_string(cols));

        BlockProbability prob = init_prob(rows, cols, config.block_rows, config.block_cols);

        detail::BestCandidate best;
        CeTrace trace;
        std::vector<double> zetas(config.n_candidates);
        for (int iter = 0; iter < config.n_iterations; iter++)
        {
            const auto candidates = sample_candidates(prob, config.n_candidates, rng);
            for (int c = 0; c < config.n_candidates; c++)
            {
                auto res = objective(y, F, candidates[c].support, config.epsilon, config.mode, h);
                zetas[c] = res.zeta;
                best.offer(res.zeta, candidates[c].support);
            }
            const auto elites = select_elites(zetas, config.n_elites);
            prob.p = config.smoothing_alpha * elite_update(candidates, elites) +
                     (1.0 - config.smoothing_alpha) * prob.p;
            trace.best_zeta.push_back(best.zeta);
            trace.prob.push_back(prob.p);
        }

        DiagnosisReport report =
            detail::finalize_report(y, F, h, best.support, best.zeta, config.mode);
        report.trace = std::move(trace);
        return report;
    }

    namespace detail
    {
        CMat gather_columns(const CMat &m, std::span<const Index> indices)
        {
            CMat out(m.rows(), static_cast<Index>(indices.size()));
            for (size_t i = 0; i < indices.size(); i++)
                out.col(static_cast<Index>(i)) = m.col(indices[i]);
            return out;
        }

        CVec gather(const CVec &v, std::span<const Index> indices)
        {
            CVec out(static_cast<Index>(indices.size()));
            for (size_t i = 0; i < indices.size(); i++)
                out(static_cast<Index>(i)) = v(indices[i]);
            return out;
        }

        void BestCandidate::offer(double candidate_zeta, const std::vector<Index> &candidate_support)
        {
            if (!valid || candidate_zeta < zeta)
            {
                valid = true;
                zeta = candidate_zeta;
                support = candidate_support;
            }
        }

        DiagnosisReport finalize_report(const CVec &y, const CMat &F, const CVec &h,
                                        const std::vector<Index> &support, double best_zeta,
                                        BlockageMode mode)
        {
            DiagnosisReport report;
            report.support = support;
            report.best_objective = best_zeta;
            report.q_hat = CVec::Zero(h.size());

            if (!support.empty())
            {
                if (mode == BlockageMode::complete)
                {
                    for (Index n : support)
                        report.q_hat(n) = -h(n);
                }
                else
                {
                    LsSolution ls = ls_solve(gather_columns(F, support), y);
                    report.ls_regularized = ls.regularized;
                    for (size_t i = 0; i < support.size(); i++)
                        report.q_hat(support[i]) = ls.x(static_cast<Index>(i));
                }
            }
            report.params = extract_params(report.q_hat, h, support);
            report.b_hat = reconstruct_b(report.q_hat, h, support);
            return report;
        }
    } // namespace detail
} // namespace ceaad
