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
// Cross-entropy search over block-structured binary support masks. Each
// iteration samples candidate supports from a per-block Bernoulli
// distribution, scores them by least-squares residual plus an L0 penalty,
// and refits the distribution to the elite (lowest-objective) samples.

#ifndef CEAAD_CE_CORE_HPP
#define CEAAD_CE_CORE_HPP

#include <span>
#include <vector>

#include "ceaad/blockage.hpp"
#include "ceaad/numerics.hpp"
#include "ceaad/rng.hpp"

namespace ceaad
{
    struct CeConfig
    {
        int n_candidates = 400;
        int n_elites = 50;
        int n_iterations = 20;
        double epsilon = 0.6; // L0 penalty weight
        Index block_rows = 2;
        Index block_cols = 2;
        BlockageMode mode = BlockageMode::partial;
        double smoothing_alpha = 1.0; // p <- alpha*p_new + (1-alpha)*p_old

        void validate() const; // throws Error on out-of-range settings
    };

    // Bernoulli parameters over the block grid of an antenna array.
    // p(i, j) is the probability that block (i, j) is hypothesized blocked.
    struct BlockProbability
    {
        RMat p;
        Index rows = 0; // antenna grid
        Index cols = 0;
        Index block_rows = 1;
        Index block_cols = 1;

        Index grid_rows() const { return rows / block_rows; }
        Index grid_cols() const { return cols / block_cols; }
    };

    // Uninformative prior: every block blocked with probability 1/2.
    // Throws BlockShapeMismatch unless block_rows | rows and block_cols | cols.
    BlockProbability init_prob(Index rows, Index cols, Index block_rows, Index block_cols);

    // One sampled support hypothesis. The antenna-level mask is the block
    // mask expanded by block_rows x block_cols, vectorized column-major;
    // support holds the indices of its ones, ascending.
    struct CandidateMask
    {
        Eigen::ArrayXXi blocks;
        std::vector<Index> support;
    };

    // Draws n_candidates masks; block entries are sampled column-major
    // (row index fastest), one Bernoulli per block.
    std::vector<CandidateMask> sample_candidates(const BlockProbability &prob, int n_candidates,
                                                 Rng &rng);

    struct ObjectiveResult
    {
        double zeta = 0.0;
        CVec q_sub;               // estimate over the support, empty when support is
        bool regularized = false; // true when the LS fit took the ridge path
    };

    // Candidate score zeta = ||y - F_S q_S||_2 + epsilon*|S|.
    // Partial mode fits q_S by least squares on the support columns;
    // complete mode pins q_S = -h_S and skips the fit. An empty support
    // scores ||y||_2 by convention.
    ObjectiveResult objective(const CVec &y, const CMat &F, std::span<const Index> support,
                              double epsilon, BlockageMode mode, const CVec &h);

    // Indices of the n_elites smallest scores, ascending by (score, index).
    std::vector<int> select_elites(std::span<const double> zetas, int n_elites);

    // Entrywise mean of the elite block masks, accumulated in elite order.
    RMat elite_update(const std::vector<CandidateMask> &candidates, std::span<const int> elites);

    struct CeTrace
    {
        std::vector<double> best_zeta; // best-so-far after each iteration
        std::vector<RMat> prob;        // block probabilities after each update
    };

    struct DiagnosisReport
    {
        std::vector<Index> support; // estimated blocked antennas, vec order
        CVec q_hat;                 // full-length deviation estimate, zero off support
        CVec b_hat;                 // reconstructed blockage coefficients
        std::vector<BlockedAntenna> params;
        double best_objective = 0.0;
        bool ls_regularized = false; // final fit was ridge-regularized
        CeTrace trace;
    };

    // Full search over an rows x cols antenna grid: n_iterations rounds of
    // sample / fit / score / elite refit, tracking the best candidate seen
    // across all iterations. The report is built from that global best:
    // partial mode re-solves the LS fit on its support, complete mode pins
    // q = -h there. h = vec(H) must be the healthy channel response.
    DiagnosisReport run_ce_aad(const CVec &y, const CMat &F, const CVec &h, Index rows, Index cols,
                               const CeConfig &config, Rng &rng);
} // namespace ceaad

#endif
