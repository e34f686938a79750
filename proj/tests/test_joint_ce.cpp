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

#include <doctest.h>

#include <algorithm>

#include "ceaad/joint_ce.hpp"
#include "ceaad/sounding.hpp"
#include "test_helpers.hpp"

using namespace ceaad;
using namespace ceaad::testing;

TEST_CASE("sample_joint composes supports with the OR rule")
{
    Rng rng(1);
    SUBCASE("blocked transmit antenna blots a column")
    {
        JointProbability p{RVec::Zero(6), RVec::Zero(4)};
        p.p_tx(2) = 1.0;
        const auto cands = sample_joint(p, 3, rng);
        for (const auto &c : cands)
        {
            REQUIRE(c.support.size() == 4);
            for (Index m = 0; m < 4; m++)
                CHECK(std::find(c.support.begin(), c.support.end(), 2 * 4 + m) !=
                      c.support.end());
        }
    }
    SUBCASE("nothing blocked, empty support")
    {
        JointProbability p{RVec::Zero(6), RVec::Zero(4)};
        for (const auto &c : sample_joint(p, 3, rng))
            CHECK(c.support.empty());
    }
    SUBCASE("cross shape from one antenna per side")
    {
        JointProbability p{RVec::Zero(6), RVec::Zero(4)};
        p.p_tx(1) = 1.0;
        p.p_rx(3) = 1.0;
        const auto cands = sample_joint(p, 2, rng);
        for (const auto &c : cands)
        {
            // elementwise OR oracle
            std::vector<bool> in(24, false);
            for (Index idx : c.support)
                in[idx] = true;
            for (Index n = 0; n < 6; n++)
                for (Index m = 0; m < 4; m++)
                    CHECK(in[n * 4 + m] == (n == 1 || m == 3));
        }
    }
    SUBCASE("support matches the OR of the drawn vectors, random probabilities")
    {
        JointProbability p = init_joint_prob(8, 5);
        for (const auto &c : sample_joint(p, 100, rng))
        {
            std::vector<bool> in(40, false);
            for (Index idx : c.support)
                in[idx] = true;
            for (Index n = 0; n < 8; n++)
                for (Index m = 0; m < 5; m++)
                    CHECK(in[n * 5 + m] == (c.d_tx(n) != 0 || c.d_rx(m) != 0));
            CHECK(std::is_sorted(c.support.begin(), c.support.end()));
        }
    }
}

TEST_CASE("joint_elite_update")
{
    Rng rng(2);
    auto cands = sample_joint(init_joint_prob(6, 4), 20, rng);
    SUBCASE("identical elites reproduce the binaries")
    {
        const auto p = joint_elite_update(cands, std::vector<int>{4, 4});
        CHECK((p.p_tx.array() == cands[4].d_tx.cast<double>()).all());
        CHECK((p.p_rx.array() == cands[4].d_rx.cast<double>()).all());
    }
    SUBCASE("complementary elites average to one half")
    {
        cands[0].d_tx.setConstant(1);
        cands[0].d_rx.setConstant(1);
        cands[1].d_tx.setConstant(0);
        cands[1].d_rx.setConstant(0);
        const auto p = joint_elite_update(cands, std::vector<int>{0, 1});
        CHECK((p.p_tx.array() == 0.5).all());
        CHECK((p.p_rx.array() == 0.5).all());
    }
    SUBCASE("matches the mean loop")
    {
        const std::vector<int> elites{1, 3, 5, 8};
        const auto p = joint_elite_update(cands, elites);
        for (Index n = 0; n < 6; n++)
        {
            double acc = 0;
            for (int e : elites)
                acc += cands[e].d_tx(n);
            CHECK(p.p_tx(n) == acc / 4.0);
        }
    }
}

namespace
{
    struct JointSetup
    {
        CMat H;
        CVec h;
        JointBlockagePattern pattern;
        JointSounding sounding;
        CVec y;
    };

    JointSetup joint_instance(std::uint64_t seed, Index k, BlockageMode mode)
    {
        const UlaGeometry ula{10, 0.5};
        JointSetup s;
        Rng rc = Rng::derive(seed, 0, "channel");
        s.H = gen_ula_channel(ula, ula, 10, rc).H;
        s.h = vec(s.H);
        Rng rb = Rng::derive(seed, 0, "blockage");
        s.pattern = gen_joint_blockage(ula, ula, 0.1, mode, rb);
        Rng rs = Rng::derive(seed, 0, "sounding");
        s.sounding = gen_joint_sounding(k, 10, 10, rs);
        Rng rn = Rng::derive(seed, 0, "noise");
        s.y = measure_joint(s.H, s.pattern, s.sounding, 0.0, rn);
        return s;
    }
} // namespace

TEST_CASE("run_joint_ce_aad")
{
    SUBCASE("clean link diagnosed empty")
    {
        const auto s = joint_instance(3, 50, BlockageMode::partial);
        CeConfig cfg;
        Rng rng(4);
        const auto rep = run_joint_ce_aad(CVec::Zero(50), s.sounding.U, s.h, 10, 10, cfg, rng);
        CHECK(rep.support.empty());
        CHECK(rep.tx_support.empty());
        CHECK(rep.rx_support.empty());
        CHECK((rep.B_hat - CMat::Ones(10, 10)).norm() == 0.0);
    }
    SUBCASE("complete runs recovered across seeds")
    {
        int exact = 0;
        for (std::uint64_t seed = 0; seed < 10; seed++)
        {
            const auto s = joint_instance(seed, 50, BlockageMode::complete);
            CeConfig cfg;
            cfg.mode = BlockageMode::complete;
            Rng rng = Rng::derive(seed, 0, "solver/ce-aad");
            const auto rep = run_joint_ce_aad(s.y, s.sounding.U, s.h, 10, 10, cfg, rng);
            exact += rep.tx_support == s.pattern.tx_support &&
                     rep.rx_support == s.pattern.rx_support;
        }
        CHECK(exact >= 9);
    }
    SUBCASE("single completely blocked transmit antenna recovers its column")
    {
        const UlaGeometry ula{10, 0.5};
        int exact = 0;
        for (std::uint64_t seed = 0; seed < 10; seed++)
        {
            Rng rc = Rng::derive(seed, 1, "channel");
            const CMat H = gen_ula_channel(ula, ula, 10, rc).H;
            JointBlockagePattern pattern;
            pattern.mode = BlockageMode::complete;
            pattern.b_tx = CVec::Ones(10);
            pattern.b_rx = CVec::Ones(10);
            const Index blocked = static_cast<Index>(seed % 10);
            pattern.b_tx(blocked) = 0.0;
            pattern.tx_support = {blocked};
            pattern.tx_params = {{blocked, 0.0, 0.0}};
            pattern.B = pattern.b_rx * pattern.b_tx.transpose();
            for (Index m = 0; m < 10; m++)
                pattern.support.push_back(blocked * 10 + m);
            Rng rs = Rng::derive(seed, 1, "sounding");
            const auto snd = gen_joint_sounding(50, 10, 10, rs);
            Rng rn = Rng::derive(seed, 1, "noise");
            const CVec y = measure_joint(H, pattern, snd, 0.0, rn);

            CeConfig cfg;
            cfg.mode = BlockageMode::complete;
            Rng rng = Rng::derive(seed, 1, "solver/ce-aad");
            const auto rep = run_joint_ce_aad(y, snd.U, vec(H), 10, 10, cfg, rng);
            exact += rep.tx_support == pattern.tx_support && rep.rx_support.empty() &&
                     rep.support == pattern.support;
        }
        CHECK(exact >= 9);
    }
    SUBCASE("probability vectors stay within [0,1]")
    {
        const auto s = joint_instance(5, 50, BlockageMode::partial);
        CeConfig cfg;
        Rng rng(6);
        const auto rep = run_joint_ce_aad(s.y, s.sounding.U, s.h, 10, 10, cfg, rng);
        for (const auto &p : rep.trace.p_tx)
        {
            CHECK((p.array() >= 0.0).all());
            CHECK((p.array() <= 1.0).all());
        }
        for (const auto &p : rep.trace.p_rx)
        {
            CHECK((p.array() >= 0.0).all());
            CHECK((p.array() <= 1.0).all());
        }
    }
}

TEST_CASE("single-receive-antenna reduction is bit-identical to the transmit-only path")
{
    // same data seen through both implementations: U = F when w_k = 1
    for (std::uint64_t seed = 20; seed < 23; seed++)
    {
        const UpaGeometry row{1, 16, 0.5, 0.5};
        Rng rc = Rng::derive(seed, 0, "channel");
        const CMat H = gen_upa_channel(row, 10, rc).H; // 1 x 16
        const CVec h = vec(H);
        Rng rb = Rng::derive(seed, 0, "blockage");
        const auto pattern = gen_blockage(row, 0.125, BlockageMode::partial, rb);
        Rng rs = Rng::derive(seed, 0, "sounding");
        const CMat F = gen_precoder(12, 16, rs);
        Rng rn = Rng::derive(seed, 0, "noise");
        const CVec y = measure_tx(H, pattern, F, noise_var_from_snr(5.0), rn);

        JointSounding s;
        s.F = F;
        s.W = CMat::Ones(12, 1);
        s.U.resize(12, 16);
        for (Index k = 0; k < 12; k++)
            s.U.row(k) = kron_row(F.row(k).transpose(), s.W.row(k).transpose()).transpose();
        REQUIRE(bitwise_equal(s.U, F));

        CeConfig tx_cfg;
        tx_cfg.block_rows = 1;
        tx_cfg.block_cols = 1;
        Rng rng_tx = Rng::derive(seed, 0, "solver/shared");
        const auto tx_rep = run_ce_aad(y, F, h, 1, 16, tx_cfg, rng_tx);

        CeConfig joint_cfg; // block dims ignored by the joint path
        Rng rng_joint = Rng::derive(seed, 0, "solver/shared");
        const auto joint_rep = run_joint_ce_aad(y, s.U, h, 1, 16, joint_cfg, rng_joint);

        CHECK(joint_rep.support == tx_rep.support);
        CHECK(joint_rep.best_objective == tx_rep.best_objective);
        CHECK(bitwise_equal(joint_rep.q_hat, tx_rep.q_hat));
        CHECK(bitwise_equal(vec(joint_rep.B_hat), tx_rep.b_hat));
        REQUIRE(joint_rep.trace.best_zeta.size() == tx_rep.trace.best_zeta.size());
        for (size_t i = 0; i < tx_rep.trace.best_zeta.size(); i++)
        {
            CHECK(joint_rep.trace.best_zeta[i] == tx_rep.trace.best_zeta[i]);
            // p_tx trace equals the 1 x n block probability row
            const RVec as_row = tx_rep.trace.prob[i].row(0).transpose();
            CHECK((joint_rep.trace.p_tx[i] - as_row).norm() == 0.0);
        }
        CHECK(joint_rep.rx_support.empty());
    }
}
