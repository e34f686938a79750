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

#ifndef CEAAD_SOUNDING_HPP
#define CEAAD_SOUNDING_HPP

#include "ceaad/blockage.hpp"
#include "ceaad/numerics.hpp"
#include "ceaad/rng.hpp"

namespace ceaad
{
    // 2-bit phase-shifter probing matrix, k_measurements x n, entries drawn
    // i.i.d. uniform from {1+i, 1-i, -1-i, -1+i}. Row k is the probe used at
    // measurement k. Entries are filled row-major (k outer, antenna inner).
    CMat gen_precoder(Index k_measurements, Index n, Rng &rng);

    // Noise power for a target SNR: SNR = 1/noise_var, so 10^(-snr_db/10).
    double noise_var_from_snr(double snr_db);

    // Transmit-side difference measurements y = F q + n with
    // q = vec(H) o b - vec(H) and n ~ CN(0, noise_var I), training symbol 1.
    CVec measure_tx(const CMat &H, const BlockagePattern &pattern, const CMat &F,
                    double noise_var, Rng &rng);

    // One probing set for the two-sided link: per measurement k a transmit
    // probe f_k (row k of F) and a receive combiner w_k (row k of W).
    // Row k of U is kron_row(f_k, w_k), so y = U vec(Q) + n by construction.
    struct JointSounding
    {
        CMat F; // k x n_tx
        CMat W; // k x n_rx
        CMat U; // k x (n_rx*n_tx)

        Index measurements() const { return F.rows(); }
    };

    // Draws F then W from the same stream and assembles U.
    JointSounding gen_joint_sounding(Index k_measurements, Index n_tx, Index n_rx, Rng &rng);

    // Two-sided difference measurements y_k = w_k^H (H o B - H) f_k + n_k.
    CVec measure_joint(const CMat &H, const JointBlockagePattern &pattern,
                       const JointSounding &sounding, double noise_var, Rng &rng);
} // namespace ceaad

#endif
