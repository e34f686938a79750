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

#include "ceaad/joint_ce.hpp"

#include <string>
#include <utility>

#include "ce_internal.hpp"

namespace ceaad
{
    JointProbability init_joint_prob(Index n_tx, Index n_rx)
    {
        if (n_tx < 1 || n_rx < 1)
            throw Error("init_joint_prob: array sizes must be >= 1");
        return {RVec::Constant(n_tx, 0.5), RVec::Constant(n_rx, 0.5)};
    }

    std::vector<JointCandidate> sample_joint(const JointProbability &prob, int n_candidates,
                                             Rng &rng)
    {
        const Index n_tx = prob.p_tx.size(), n_rx = prob.p_rx.size();
        std::vector<JointCandidate> out(n_candidates);
        for (auto &cand : out)
        {
            cand.d_tx.resize(n_tx);
            cand.d_rx.resize(n_rx);
            for (Index n = 0; n < n_tx; n++)
                cand.d_tx(n) = rng.bernoulli(prob.p_tx(n)) ? 1 : 0;
            if (n_rx == 1)
                cand.d_rx.setZero(); // see header: degenerate receiver pinned
            else
                for (Index m = 0; m < n_rx; m++)
                    cand.d_rx(m) = rng.bernoulli(prob.p_rx(m)) ? 1 : 0;
            for (Index n = 0; n < n_tx; n++)
                for (Index m = 0; m < n_rx; m++)
                    if (cand.d_tx(n) != 0 || cand.d_rx(m) != 0)
                        cand.support.push_back(n * n_rx + m);
        }
        return out;
    }

    JointProbability joint_elite_update(const std::vector<JointCandidate> &candidates,
                                        std::span<const int> elites)
    {
        if (elites.empty())
            throw Error("joint_elite_update: empty elite list");
        RVec acc_tx = RVec::Zero(candidates[elites[0]].d_tx.size());
        RVec acc_rx = RVec::Zero(candidates[elites[0]].d_rx.size());
        for (int e : elites)
        {
            acc_tx += candidates[e].d_tx.cast<double>().matrix();
            acc_rx += candidates[e].d_rx.cast<double>().matrix();
        }
        const auto n = static_cast<double>(elites.size());
        return {acc_tx / n, acc_rx / n};
    }

    JointDiagnosisReport run_joint_ce_aad(const CVec &y, const CMat &U, const CVec &h, Index n_rx,
                                          Index n_tx, const CeConfig &config, Rng &rng)
    {
        config.validate();
        if (U.cols() != n_rx * n_tx || h.size() != n_rx * n_tx)
            throw DimensionMismatch("run_joint_ce_aad: operator has " + std::to_string(U.cols()) +
                                    " columns, channel " + std::to_string(h.size()) +
                                    " entries, Q is " + std::to_string(n_rx) + "x" +
                                    std::to_string(n_tx));

        JointProbability prob = init_joint_prob(n_tx, n_rx);

        struct Best
        {
            bool valid = false;
            double zeta = 0.0;
            std::vector<Index> support;
            Eigen::ArrayXi d_tx, d_rx;
        } best;

        JointTrace trace;
        std::vector<double> zetas(config.n_candidates);
        for (int iter = 0; iter < config.n_iterations; iter++)
        {
            const auto candidates = sample_joint(prob, config.n_candidates, rng);
            for (int c = 0; c < config.n_candidates; c++)
            {
                const auto res =
                    objective(y, U, candidates[c].support, config.epsilon, config.mode, h);
                zetas[c] = res.zeta;
                if (!best.valid || res.zeta < best.zeta)
                {
                    best.valid = true;
                    best.zeta = res.zeta;
                    best.support = candidates[c].support;
                    best.d_tx = candidates[c].d_tx;
                    best.d_rx = candidates[c].d_rx;
                }
            }
            const auto elites = select_elites(zetas, config.n_elites);
            const JointProbability updated = joint_elite_update(candidates, elites);
            prob.p_tx = config.smoothing_alpha * updated.p_tx +
                        (1.0 - config.smoothing_alpha) * prob.p_tx;
            prob.p_rx = config.smoothing_alpha * updated.p_rx +
                        (1.0 - config.smoothing_alpha) * prob.p_rx;
            trace.best_zeta.push_back(best.zeta);
            trace.p_tx.push_back(prob.p_tx);
            trace.p_rx.push_back(prob.p_rx);
        }

        DiagnosisReport cells =
            detail::finalize_report(y, U, h, best.support, best.zeta, config.mode);

        JointDiagnosisReport report;
        report.support = std::move(cells.support);
        for (Index n = 0; n < n_tx; n++)
            if (best.d_tx(n) != 0)
                report.tx_support.push_back(n);
        for (Index m = 0; m < n_rx; m++)
            if (best.d_rx(m) != 0)
                report.rx_support.push_back(m);
        report.q_hat = std::move(cells.q_hat);
        report.B_hat = ivec(cells.b_hat, n_rx, n_tx);
        report.cell_params = std::move(cells.params);
        report.best_objective = cells.best_objective;
        report.ls_regularized = cells.ls_regularized;
        report.trace = std::move(trace);
        return report;
    }
} // namespace ceaad
