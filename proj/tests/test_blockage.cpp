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
#include <cmath>
#include <numbers>
#include <set>

#include "ceaad/blockage.hpp"
#include "ceaad/channel.hpp"
#include "test_helpers.hpp"

using namespace ceaad;
using namespace ceaad::testing;

namespace
{
    const UpaGeometry ten{10, 10, 0.5, 0.5};
    constexpr double two_pi = 2.0 * std::numbers::pi;

    // bounding box of a support on an nx-row grid
    struct Box
    {
        Index rmin = 1 << 20, rmax = -1, cmin = 1 << 20, cmax = -1;
    };

    Box bounding_box(const std::vector<Index> &support, Index nx)
    {
        Box b;
        for (Index idx : support)
        {
            const Index r = idx % nx, c = idx / nx;
            b.rmin = std::min(b.rmin, r);
            b.rmax = std::max(b.rmax, r);
            b.cmin = std::min(b.cmin, c);
            b.cmax = std::max(b.cmax, c);
        }
        return b;
    }
} // namespace

TEST_CASE("gen_blockage basics")
{
    Rng rng(1);
    SUBCASE("p_b = 0 leaves the array clean")
    {
        const auto p = gen_blockage(ten, 0.0, BlockageMode::partial, rng);
        CHECK(p.support.empty());
        for (Index i = 0; i < 100; i++)
            CHECK(p.b(i) == cplx(1));
    }
    SUBCASE("complete mode zeroes the support")
    {
        const auto p = gen_blockage(ten, 0.1, BlockageMode::complete, rng);
        CHECK(p.support.size() == 10);
        for (Index i : p.support)
            CHECK(p.b(i) == cplx(0));
        Index off = 0;
        for (Index i = 0; i < 100; i++)
            if (std::find(p.support.begin(), p.support.end(), i) == p.support.end())
            {
                CHECK(p.b(i) == cplx(1));
                off++;
            }
        CHECK(off == 90);
    }
    SUBCASE("invalid probability")
    {
        CHECK_THROWS_AS(gen_blockage(ten, -0.1, BlockageMode::partial, rng), InvalidProbability);
        CHECK_THROWS_AS(gen_blockage(ten, 1.5, BlockageMode::partial, rng), InvalidProbability);
    }
}

TEST_CASE("p_b = 0.1 on 10x10 gives a 2x5 or 5x2 rectangle")
{
    Rng rng(2);
    bool seen_2x5 = false, seen_5x2 = false;
    for (int c = 0; c < 60; c++)
    {
        const auto p = gen_blockage(ten, 0.1, BlockageMode::partial, rng);
        REQUIRE(p.support.size() == 10);
        const Box box = bounding_box(p.support, 10);
        const Index rows = box.rmax - box.rmin + 1, cols = box.cmax - box.cmin + 1;
        const bool is_2x5 = rows == 2 && cols == 5;
        const bool is_5x2 = rows == 5 && cols == 2;
        CHECK((is_2x5 || is_5x2));
        CHECK(rows * cols == 10); // filled rectangle, hence contiguous
        seen_2x5 |= is_2x5;
        seen_5x2 |= is_5x2;
    }
    CHECK(seen_2x5);
    CHECK(seen_5x2);
}

TEST_CASE("blocked count is round(p_b * N)")
{
    Rng rng(3);
    for (int c = 0; c < 50; c++)
    {
        const double p_b = rng.uniform01();
        const auto p = gen_blockage(ten, p_b, BlockageMode::partial, rng);
        CHECK(static_cast<long>(p.support.size()) == std::lround(p_b * 100.0));
    }
}

TEST_CASE("partial coefficients lie in the model ranges")
{
    Rng rng(4);
    const auto p = gen_blockage(ten, 0.25, BlockageMode::partial, rng);
    for (const auto &a : p.params)
    {
        CHECK(a.tau >= 0.0);
        CHECK(a.tau < 1.0);
        CHECK(a.psi >= 0.0);
        CHECK(a.psi < two_pi);
        CHECK(std::abs(p.b(a.index) - std::polar(a.tau, a.psi)) == 0.0);
    }
}

TEST_CASE("cluster options: forced shape and alignment")
{
    Rng rng(5);
    ClusterOptions opts;
    opts.shape = {{2, 2}};
    opts.align_rows = 2;
    opts.align_cols = 2;
    for (int c = 0; c < 20; c++)
    {
        const auto p = gen_blockage(ten, 0.04, BlockageMode::complete, rng, opts);
        REQUIRE(p.support.size() == 4);
        const Box box = bounding_box(p.support, 10);
        CHECK(box.rmax - box.rmin + 1 == 2);
        CHECK(box.cmax - box.cmin + 1 == 2);
        CHECK(box.rmin % 2 == 0);
        CHECK(box.cmin % 2 == 0);
    }
    ClusterOptions bad;
    bad.shape = {{3, 2}};
    CHECK_THROWS_AS(gen_blockage(ten, 0.04, BlockageMode::complete, rng, bad), Error);
}

TEST_CASE("L-shaped fallback stays contiguous when no factor pair fits")
{
    Rng rng(6);
    const UpaGeometry small{4, 4, 0.5, 0.5};
    // 7 antennas on a 4x4: factor pairs 1x7/7x1 do not fit
    const auto p = gen_blockage(small, 7.0 / 16.0, BlockageMode::partial, rng);
    REQUIRE(p.support.size() == 7);
    const Box box = bounding_box(p.support, 4);
    CHECK((box.rmax - box.rmin + 1) * (box.cmax - box.cmin + 1) == 8);
}

TEST_CASE("gen_joint_blockage")
{
    const UlaGeometry ula{10, 0.5};
    Rng rng(7);
    SUBCASE("p_b = 0 gives the all-ones outer product")
    {
        const auto p = gen_joint_blockage(ula, ula, 0.0, BlockageMode::partial, rng);
        CHECK(p.support.empty());
        CHECK((p.B - CMat::Ones(10, 10)).norm() == 0.0);
    }
    SUBCASE("complete run blanks a row and a column")
    {
        const auto p = gen_joint_blockage(ula, ula, 0.1, BlockageMode::complete, rng);
        REQUIRE(p.tx_support.size() == 1);
        REQUIRE(p.rx_support.size() == 1);
        const Index n = p.tx_support[0], m = p.rx_support[0];
        for (Index j = 0; j < 10; j++)
            for (Index i = 0; i < 10; i++)
                CHECK(p.B(i, j) == ((i == m || j == n) ? cplx(0) : cplx(1)));
        CHECK(p.support.size() == 19);
    }
    SUBCASE("outer-product structure, elementwise")
    {
        for (int c = 0; c < 20; c++)
        {
            const auto p = gen_joint_blockage(ula, ula, 0.3, BlockageMode::partial, rng);
            for (Index j = 0; j < 10; j++)
                for (Index i = 0; i < 10; i++)
                    CHECK(p.B(i, j) == p.b_rx(i) * p.b_tx(j));
        }
    }
}

TEST_CASE("truth_q")
{
    Rng rng(8);
    const auto ch = gen_upa_channel(ten, 10, rng);
    SUBCASE("no blockage gives zero deviation")
    {
        const auto clean = gen_blockage(ten, 0.0, BlockageMode::partial, rng);
        CHECK(truth_q(ch.H, clean).norm() == 0.0);
    }
    SUBCASE("complete single blockage flips the sign of h")
    {
        ClusterOptions one;
        one.shape = {{1, 1}};
        const auto p = gen_blockage(ten, 0.01, BlockageMode::complete, rng, one);
        REQUIRE(p.support.size() == 1);
        const CVec q = truth_q(ch.H, p);
        const CVec h = vec(ch.H);
        for (Index i = 0; i < 100; i++)
            CHECK(q(i) == (i == p.support[0] ? -h(i) : cplx(0)));
    }
    SUBCASE("matches the scalar loop h_n (b_n - 1)")
    {
        const auto p = gen_blockage(ten, 0.2, BlockageMode::partial, rng);
        const CVec q = truth_q(ch.H, p);
        const CVec h = vec(ch.H);
        for (Index i = 0; i < 100; i++)
            CHECK(std::abs(q(i) - h(i) * (p.b(i) - cplx(1))) <= 1e-15);
    }
    SUBCASE("joint form matches vec(H o B - H)")
    {
        const UlaGeometry ula{10, 0.5};
        const auto jch = gen_ula_channel(ula, ula, 10, rng);
        const auto jp = gen_joint_blockage(ula, ula, 0.1, BlockageMode::partial, rng);
        const CVec q = truth_q(jch.H, jp);
        for (Index j = 0; j < 10; j++)
            for (Index i = 0; i < 10; i++)
                CHECK(std::abs(q(j * 10 + i) - jch.H(i, j) * (jp.B(i, j) - cplx(1))) <= 1e-14);
    }
}

TEST_CASE("extract_params inverts the coefficient definition")
{
    SUBCASE("complete blockage estimate")
    {
        CVec h(2), q(2);
        h << cplx(0.3, -0.1), cplx(1);
        q << -h(0), cplx(0);
        const std::vector<Index> support{0};
        const auto params = extract_params(q, h, support);
        REQUIRE(params.size() == 1);
        CHECK(params[0].tau <= 1e-12);
        // psi is non-comparable at tau ~= 0
    }
    SUBCASE("zero deviation means unblocked")
    {
        CVec h(1), q(1);
        h << cplx(2, 1);
        q << cplx(0);
        const std::vector<Index> support{0};
        const auto params = extract_params(q, h, support);
        CHECK(params[0].tau == 1.0);
        CHECK(params[0].psi == 0.0);
    }
    SUBCASE("frozen inverse example")
    {
        CVec h(1), q(1);
        h << cplx(1);
        q << cplx(-1) + 0.5 * std::polar(1.0, std::numbers::pi / 3.0);
        const auto params = extract_params(q, h, std::vector<Index>{0});
        CHECK(params[0].tau == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(params[0].psi == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-12));
    }
    SUBCASE("null channel is rejected")
    {
        CVec h(1), q(1);
        h << cplx(1e-13);
        q << cplx(1);
        CHECK_THROWS_AS(extract_params(q, h, std::vector<Index>{0}), ChannelNull);
    }
}

TEST_CASE("reconstruct_b")
{
    Rng rng(9);
    const auto ch = gen_upa_channel(ten, 10, rng);
    const CVec h = vec(ch.H);
    SUBCASE("empty support gives all-ones")
    {
        const CVec b = reconstruct_b(CVec::Zero(100), h, std::vector<Index>{});
        for (Index i = 0; i < 100; i++)
            CHECK(b(i) == cplx(1));
    }
    SUBCASE("roundtrip through truth_q is the identity")
    {
        for (int c = 0; c < 200; c++)
        {
            const auto p = gen_blockage(ten, 0.1 + 0.3 * rng.uniform01(),
                                        BlockageMode::partial, rng);
            const CVec q = truth_q(ch.H, p);
            const CVec b = reconstruct_b(q, h, p.support);
            CHECK((b - p.b).norm() <= 1e-10 * p.b.norm());

            // forward model agrees on the support
            const CVec q_again = hadamard(h, b) - h;
            for (Index i : p.support)
                CHECK(std::abs(q_again(i) - q(i)) <= 1e-12);
        }
    }
    SUBCASE("ground-truth parameters are recovered")
    {
        for (int c = 0; c < 50; c++)
        {
            const auto p = gen_blockage(ten, 0.15, BlockageMode::partial, rng);
            const CVec q = truth_q(ch.H, p);
            const auto params = extract_params(q, h, p.support);
            REQUIRE(params.size() == p.params.size());
            for (size_t i = 0; i < params.size(); i++)
            {
                CHECK(params[i].tau >= 0.0);
                CHECK(params[i].tau <= 1.0 + 1e-12);
                CHECK(params[i].tau == doctest::Approx(p.params[i].tau).epsilon(1e-10));
                if (p.params[i].tau > 0.0)
                {
                    double diff = std::fmod(std::abs(params[i].psi - p.params[i].psi), two_pi);
                    diff = std::min(diff, two_pi - diff);
                    CHECK(diff < 1e-10);
                }
            }
        }
    }
}
