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

#ifndef CEAAD_BASELINES_HPP
#define CEAAD_BASELINES_HPP

#include <span>
#include <vector>

#include "ceaad/ce_core.hpp"
#include "ceaad/numerics.hpp"
#include "ceaad/rng.hpp"

namespace ceaad
{
    struct OmpResult
    {
        std::vector<Index> support; // ascending
        CVec q_hat;                 // full length, zero off support
        std::vector<double> residual_trace; // residual norm after each atom
    };

    // Standard orthogonal matching pursuit: greedy column selection by
    // maximum |correlation| with the running residual (ties to the lower
    // index), full LS refit per step, stopping at max_atoms atoms or when
    // the residual norm drops to residual_threshold. The atom budget is
    // clamped to the measurement count.
    OmpResult omp(const CVec &y, const CMat &F, Index max_atoms, double residual_threshold);

    // Genie-aided bound: LS on the true support's columns, zeros elsewhere.
    CVec oracle_ls(const CVec &y, const CMat &F, std::span<const Index> true_support);

    // Cross-entropy search without the block prior: per-antenna Bernoulli
    // probabilities, i.e. run_ce_aad with 1x1 blocks.
    DiagnosisReport plain_ce(const CVec &y, const CMat &F, const CVec &h, Index rows, Index cols,
                             CeConfig config, Rng &rng);
} // namespace ceaad

#endif
