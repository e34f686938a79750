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
// Shared pieces of the transmit-only and joint cross-entropy loops. Both
// paths must stay numerically identical operation-for-operation so that the
// joint search with a single receive antenna reproduces the transmit-only
// search bit for bit.

#ifndef CEAAD_CE_INTERNAL_HPP
#define CEAAD_CE_INTERNAL_HPP

#include <span>
#include <vector>

#include "ceaad/ce_core.hpp"

namespace ceaad::detail
{
    CMat gather_columns(const CMat &m, std::span<const Index> indices);
    CVec gather(const CVec &v, std::span<const Index> indices);

    // Best candidate across all iterations; earlier candidates win ties.
    struct BestCandidate
    {
        bool valid = false;
        double zeta = 0.0;
        std::vector<Index> support;

        void offer(double candidate_zeta, const std::vector<Index> &candidate_support);
    };

    // Builds the output estimate from the globally best support: partial
    // mode re-solves the LS fit, complete mode pins q = -h on the support.
    DiagnosisReport finalize_report(const CVec &y, const CMat &F, const CVec &h,
                                    const std::vector<Index> &support, double best_zeta,
                                    BlockageMode mode);
} // namespace ceaad::detail

#endif
