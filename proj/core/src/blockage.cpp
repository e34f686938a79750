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

#include "ceaad/blockage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ceaad
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr double channel_null_eps = 1e-12;

        void check_probability(double p_b)
        {
            if (!(p_b >= 0.0 && p_b <= 1.0))
                throw InvalidProbability("blockage probability " + std::to_string(p_b) +
                                         " outside [0, 1]");
        }

        // Valid top-left positions along one axis for side length `len` with
        // the top-left coordinate restricted to multiples of `align`.
        std::vector<Index> placements(Index extent, Index len, Index align)
        {
            std::vector<Index> out;
            for (Index p = 0; p + len <= extent; p += align)
                out.push_back(p);
            return out;
        }

        // Rectangle side lengths for `count` cells on an nx x ny grid.
        // Factor pairs with both sides >= 2 are preferred; 1-wide strips are
        // admitted only when nothing wider fits.
        std::vector<std::pair<Index, Index>> cluster_shapes(Index count, Index nx, Index ny)
        {
            std::vector<std::pair<Index, Index>> pairs, wide;
            for (Index a = 1; a <= count; a++)
            {
                if (count % a != 0)
                    continue;
                const Index b = count / a;
                if (a > nx || b > ny)
                    continue;
                pairs.emplace_back(a, b);
                if (a >= 2 && b >= 2)
                    wide.emplace_back(a, b);
            }
            return wide.empty() ? pairs : wide;
        }

        // Bounding rectangle for the contiguous fallback fill: smallest area
        // >= count, ties broken towards square, then towards fewer rows.
        std::pair<Index, Index> fallback_rect(Index count, Index nx, Index ny)
        {
            std::pair<Index, Index> best{nx, ny};
            Index best_area = nx * ny;
            Index best_skew = std::abs(nx - ny);
            for (Index a = 1; a <= nx; a++)
            {
                const Index b = (count + a - 1) / a;
                if (b > ny)
                    continue;
                const Index area = a * b;
                const Index skew = std::abs(a - b);
                if (area < best_area || (area == best_area && skew < best_skew) ||
                    (area == best_area && skew == best_skew && a < best.first))
                {
                    best = {a, b};
                    best_area = area;
                    best_skew = skew;
                }
            }
            return best;
        }

        std::complex<double> coefficient(BlockageMode mode, Rng &rng, double &tau, double &psi)
        {
            if (mode == BlockageMode::complete)
            {
                tau = 0.0;
                psi = 0.0;
                return {0.0, 0.0};
            }
            tau = rng.uniform01();
            psi = rng.uniform(0.0, two_pi);
            return std::polar(tau, psi);
        }
    } // namespace

    BlockagePattern gen_blockage(const UpaGeometry &geom, double p_b, BlockageMode mode, Rng &rng,
                                 const ClusterOptions &options)
    {
        check_probability(p_b);
        const Index nx = geom.nx, ny = geom.ny;
        const auto count = static_cast<Index>(std::lround(p_b * static_cast<double>(nx * ny)));

        BlockagePattern pattern;
        pattern.mode = mode;
        pattern.b = CVec::Ones(nx * ny);
        if (count == 0)
            return pattern;

        Index rows, cols;
        if (options.shape)
        {
            rows = options.shape->first;
            cols = options.shape->second;
            if (rows * cols != count || rows > nx || cols > ny)
                throw Error("cluster shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " does not match " + std::to_string(count) + " blocked antennas on a " +
                            std::to_string(nx) + "x" + std::to_string(ny) + " array");
        }
        else
        {
            const auto shapes = cluster_shapes(count, nx, ny);
            if (!shapes.empty())
            {
                const auto pick = shapes[rng.bounded(shapes.size())];
                rows = pick.first;
                cols = pick.second;
            }
            else
            {
                std::tie(rows, cols) = fallback_rect(count, nx, ny);
            }
        }

        const auto row_pos = placements(nx, rows, options.align_rows);
        const auto col_pos = placements(ny, cols, options.align_cols);
        if (row_pos.empty() || col_pos.empty())
            throw Error("no valid placement for a " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " cluster on a " + std::to_string(nx) + "x" +
                        std::to_string(ny) + " array with the requested alignment");
        const Index r0 = row_pos[rng.bounded(row_pos.size())];
        const Index c0 = col_pos[rng.bounded(col_pos.size())];

        // Column-major fill keeps the partial fallback region contiguous.
        Index placed = 0;
        for (Index c = c0; c < c0 + cols && placed < count; c++)
            for (Index r = r0; r < r0 + rows && placed < count; r++, placed++)
                pattern.support.push_back(c * nx + r);
        std::sort(pattern.support.begin(), pattern.support.end());

        for (Index idx : pattern.support)
        {
            double tau, psi;
            pattern.b(idx) = coefficient(mode, rng, tau, psi);
            pattern.params.push_back({idx, tau, psi});
        }
        return pattern;
    }

    namespace
    {
        void gen_run(Index n, double p_b, BlockageMode mode, Rng &rng, CVec &b,
                     std::vector<Index> &support, std::vector<BlockedAntenna> &params)
        {
            b = CVec::Ones(n);
            const auto count = static_cast<Index>(std::lround(p_b * static_cast<double>(n)));
            if (count == 0)
                return;
            const Index start = static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(n - count + 1)));
            for (Index i = start; i < start + count; i++)
            {
                double tau, psi;
                b(i) = coefficient(mode, rng, tau, psi);
                support.push_back(i);
                params.push_back({i, tau, psi});
            }
        }
    } // namespace

    JointBlockagePattern gen_joint_blockage(const UlaGeometry &tx, const UlaGeometry &rx,
                                            double p_b, BlockageMode mode, Rng &rng)
    {
        check_probability(p_b);
        JointBlockagePattern pattern;
        pattern.mode = mode;
        gen_run(tx.n, p_b, mode, rng, pattern.b_tx, pattern.tx_support, pattern.tx_params);
        gen_run(rx.n, p_b, mode, rng, pattern.b_rx, pattern.rx_support, pattern.rx_params);
        pattern.B = pattern.b_rx * pattern.b_tx.transpose();

        std::vector<bool> tx_hit(tx.n, false), rx_hit(rx.n, false);
        for (Index i : pattern.tx_support)
            tx_hit[i] = true;
        for (Index i : pattern.rx_support)
            rx_hit[i] = true;
        for (Index n = 0; n < tx.n; n++)
            for (Index m = 0; m < rx.n; m++)
                if (tx_hit[n] || rx_hit[m])
                    pattern.support.push_back(n * rx.n + m);
        return pattern;
    }

    CVec truth_q(const CMat &H, const BlockagePattern &pattern)
    {
        if (H.size() != pattern.b.size())
            throw DimensionMismatch("truth_q: channel has " + std::to_string(H.size()) +
                                    " antennas, pattern has " + std::to_string(pattern.b.size()));
        const CVec h = vec(H);
        return hadamard(h, pattern.b) - h;
    }

    CVec truth_q(const CMat &H, const JointBlockagePattern &pattern)
    {
        if (H.rows() != pattern.B.rows() || H.cols() != pattern.B.cols())
            throw DimensionMismatch("truth_q: channel is " + std::to_string(H.rows()) + "x" +
                                    std::to_string(H.cols()) + ", pattern is " +
                                    std::to_string(pattern.B.rows()) + "x" +
                                    std::to_string(pattern.B.cols()));
        return vec((H.cwiseProduct(pattern.B) - H).eval());
    }

    std::vector<BlockedAntenna> extract_params(const CVec &q_hat, const CVec &h,
                                               std::span<const Index> support)
    {
        std::vector<BlockedAntenna> out;
        out.reserve(support.size());
        for (Index n : support)
        {
            if (std::abs(h(n)) <= channel_null_eps)
                throw ChannelNull("channel coefficient at antenna " + std::to_string(n) +
                                  " is numerically zero");
            const cplx ratio = q_hat(n) / h(n) + 1.0;
            const double tau = std::abs(ratio);
            double psi = tau == 0.0 ? 0.0 : std::arg(ratio);
            if (psi < 0.0)
                psi += two_pi;
            out.push_back({n, tau, psi});
        }
        return out;
    }

    CVec reconstruct_b(const CVec &q_hat, const CVec &h, std::span<const Index> support)
    {
        CVec b = CVec::Ones(h.size());
        for (Index n : support)
        {
            if (std::abs(h(n)) <= channel_null_eps)
                throw ChannelNull("channel coefficient at antenna " + std::to_string(n) +
                                  " is numerically zero");
            b(n) = q_hat(n) / h(n) + 1.0;
        }
        return b;
    }
} // namespace ceaad
