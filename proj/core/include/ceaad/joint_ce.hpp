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
//
// Two-sided diagnosis: candidate supports over the deviation matrix Q are
// composed from independent per-side binary vectors with an OR rule, so a
// blocked transmit antenna blots a column of Q and a blocked receive
// antenna a row. Scoring, elite selection and output are shared with the
// transmit-only search.

#ifndef CEAAD_JOINT_CE_HPP
#define CEAAD_JOINT_CE_HPP

#include <span>
#include <vector>

#include "ceaad/ce_core.hpp"

namespace ceaad
{
    // Per-side Bernoulli parameters.
    struct JointProbability
    {
        RVec p_tx;
        RVec p_rx;
    };

    // Uninformative prior, 1/2 everywhere.
    JointProbability init_joint_prob(Index n_tx, Index n_rx);

    // One OR-composed support hypothesis: cell (m, n) of Q is active iff
    // d_rx(m) = 1 or d_tx(n) = 1; support holds the active vec(Q) indices.
    struct JointCandidate
    {
        Eigen::ArrayXi d_tx;
        Eigen::ArrayXi d_rx;
        std::vector<Index> support;
    };

    // Per candidate the stream is consumed as d_tx entries then d_rx
    // entries. A single-antenna receiver is pinned to d_rx = 0 without
    // consuming randomness: one dead receive antenna is indistinguishable
    // from a fully blocked transmitter, and the pinning makes the search
    // collapse exactly onto the transmit-only one.
    std::vector<JointCandidate> sample_joint(const JointProbability &prob, int n_candidates,
                                             Rng &rng);

    // Per-side entrywise means of the elite vectors, in elite order.
    JointProbability joint_elite_update(const std::vector<JointCandidate> &candidates,
                                        std::span<const int> elites);

    struct JointTrace
    {
        std::vector<double> best_zeta;
        std::vector<RVec> p_tx;
        std::vector<RVec> p_rx;
    };

    struct JointDiagnosisReport
    {
        std::vector<Index> support;    // vec(Q) cell indices
        std::vector<Index> tx_support; // blocked transmit antennas
        std::vector<Index> rx_support; // blocked receive antennas
        CVec q_hat;                    // full-length deviation estimate
        CMat B_hat;                    // composite coefficients, 1 off support
        std::vector<BlockedAntenna> cell_params; // per-cell (tau, psi) of B_hat
        double best_objective = 0.0;
        bool ls_regularized = false;
        JointTrace trace;
    };

    // Same loop as run_ce_aad with OR-composed sampling and per-side elite
    // refits. U rows must be kron_row(f_k, w_k); h = vec(H). The composite
    // matrix is reconstructed as B_hat(m,n) = Q_hat(m,n)/H(m,n) + 1 on the
    // support. Throws ChannelNull when H is numerically zero on it.
    JointDiagnosisReport run_joint_ce_aad(const CVec &y, const CMat &U, const CVec &h, Index n_rx,
                                          Index n_tx, const CeConfig &config, Rng &rng);
} // namespace ceaad

#endif
