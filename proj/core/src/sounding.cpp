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

#include "ceaad/sounding.hpp"

#include <cmath>
#include <string>

namespace ceaad
{
    namespace
    {
        const cplx phase_alphabet[4] = {{1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}, {-1.0, 1.0}};

        CVec noise(Index k, double noise_var, Rng &rng)
        {
            CVec n(k);
            for (Index i = 0; i < k; i++)
                n(i) = rng.complex_normal(noise_var);
            return n;
        }
    } // namespace

    CMat gen_precoder(Index k_measurements, Index n, Rng &rng)
    {
        CMat f(k_measurements, n);
        for (Index k = 0; k < k_measurements; k++)
            for (Index j = 0; j < n; j++)
                f(k, j) = phase_alphabet[rng.bounded(4)];
        return f;
    }

    double noise_var_from_snr(double snr_db)
    {
        return std::pow(10.0, -snr_db / 10.0);
    }

    CVec measure_tx(const CMat &H, const BlockagePattern &pattern, const CMat &F,
                    double noise_var, Rng &rng)
    {
        if (F.cols() != H.size())
            throw DimensionMismatch("measure_tx: precoder has " + std::to_string(F.cols()) +
                                    " columns, channel has " + std::to_string(H.size()) +
                                    " antennas");
        return F * truth_q(H, pattern) + noise(F.rows(), noise_var, rng);
    }

    JointSounding gen_joint_sounding(Index k_measurements, Index n_tx, Index n_rx, Rng &rng)
    {
        JointSounding s;
        s.F = gen_precoder(k_measurements, n_tx, rng);
        s.W = gen_precoder(k_measurements, n_rx, rng);
        s.U.resize(k_measurements, n_rx * n_tx);
        for (Index k = 0; k < k_measurements; k++)
            s.U.row(k) = kron_row(s.F.row(k).transpose(), s.W.row(k).transpose()).transpose();
        return s;
    }

    CVec measure_joint(const CMat &H, const JointBlockagePattern &pattern,
                       const JointSounding &sounding, double noise_var, Rng &rng)
    {
        if (sounding.F.cols() != H.cols() || sounding.W.cols() != H.rows())
            throw DimensionMismatch("measure_joint: sounding probes " +
                                    std::to_string(sounding.W.cols()) + "x" +
                                    std::to_string(sounding.F.cols()) + " do not match a " +
                                    std::to_string(H.rows()) + "x" + std::to_string(H.cols()) +
                                    " channel");
        return sounding.U * truth_q(H, pattern) + noise(sounding.measurements(), noise_var, rng);
    }
} // namespace ceaad
