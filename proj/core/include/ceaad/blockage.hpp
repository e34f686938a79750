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

#ifndef CEAAD_BLOCKAGE_HPP
#define CEAAD_BLOCKAGE_HPP

#include <optional>
#include <span>
#include <vector>

#include "ceaad/channel.hpp"
#include "ceaad/numerics.hpp"
#include "ceaad/rng.hpp"

namespace ceaad
{
    enum class BlockageMode
    {
        partial, // blocked antenna keeps coefficient tau*exp(i*psi), 0 < tau < 1
        complete // blocked antenna coefficient is exactly 0
    };

    // Per-antenna blockage coefficient tau*exp(i*psi):
    // tau in [0,1] is the absorption, psi in [0,2pi) the scattering phase.
    struct BlockedAntenna
    {
        Index index = 0;
        double tau = 0.0;
        double psi = 0.0;
    };

    // Blockage of a planar transmit array. b has one entry per antenna in
    // vec order: 1 off the support, tau*exp(i*psi) on it (0 when complete).
    struct BlockagePattern
    {
        BlockageMode mode = BlockageMode::partial;
        CVec b;
        std::vector<Index> support; // sorted, vec-order antenna indices
        std::vector<BlockedAntenna> params;
    };

    // Blockage at both ends of a linear-array link. The composite matrix is
    // the outer product B(m, n) = b_rx(m) * b_tx(n); cells where either end
    // is blocked deviate from 1.
    struct JointBlockagePattern
    {
        BlockageMode mode = BlockageMode::partial;
        CVec b_tx;
        CVec b_rx;
        CMat B; // n_rx x n_tx
        std::vector<Index> tx_support;
        std::vector<Index> rx_support;
        std::vector<BlockedAntenna> tx_params;
        std::vector<BlockedAntenna> rx_params;
        std::vector<Index> support; // sorted vec(Q) indices of affected cells
    };

    // Optional constraints on the generated cluster, used by experiments that
    // need a specific shape or a block-grid-aligned placement.
    struct ClusterOptions
    {
        std::optional<std::pair<Index, Index>> shape; // rows x cols override
        Index align_rows = 1; // top-left row restricted to multiples
        Index align_cols = 1; // top-left col restricted to multiples
    };

    // Draws a clustered pattern with round(p_b * nx * ny) blocked antennas.
    // The cluster is a contiguous axis-aligned rectangle: its side lengths
    // are drawn uniformly from the factor pairs of the blocked count that fit
    // the array (degenerate 1-wide strips are used only when no wider pair
    // fits), its position uniformly among valid placements. When no factor
    // pair fits at all, a contiguous column-major fill of the best-fitting
    // bounding rectangle is used instead.
    //
    // Stream consumption order: shape, row position, col position, then per
    // blocked antenna in index order tau, psi (partial mode only).
    BlockagePattern gen_blockage(const UpaGeometry &geom, double p_b, BlockageMode mode, Rng &rng,
                                 const ClusterOptions &options = {});

    // Independent contiguous runs of round(p_b * n) blocked elements on each
    // ULA; transmit side is drawn first. B = b_rx * b_tx^T.
    JointBlockagePattern gen_joint_blockage(const UlaGeometry &tx, const UlaGeometry &rx,
                                            double p_b, BlockageMode mode, Rng &rng);

    // Ground-truth measurement deviation q = vec(H) o b - vec(H).
    CVec truth_q(const CMat &H, const BlockagePattern &pattern);

    // Joint ground truth q = vec(H o B - H).
    CVec truth_q(const CMat &H, const JointBlockagePattern &pattern);

    // Recovers (tau, psi) per supported antenna from an estimated deviation:
    // tau = |q_n/h_n + 1|, psi = arg(q_n/h_n + 1) normalized to [0, 2pi),
    // psi = 0 by convention when tau = 0. Throws ChannelNull when some
    // |h_n| <= 1e-12 on the support.
    std::vector<BlockedAntenna> extract_params(const CVec &q_hat, const CVec &h,
                                               std::span<const Index> support);

    // Rebuilds the blockage coefficient vector: q_n/h_n + 1 on the support,
    // 1 elsewhere. Throws ChannelNull as extract_params does.
    CVec reconstruct_b(const CVec &q_hat, const CVec &h, std::span<const Index> support);
} // namespace ceaad

#endif
