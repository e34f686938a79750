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

#include <cmath>
#include <numbers>

#include "ceaad/channel.hpp"
#include "test_helpers.hpp"

using namespace ceaad;
using namespace ceaad::testing;

namespace
{
    constexpr double half_pi = std::numbers::pi / 2.0;
}

TEST_CASE("upa_response analytic cases")
{
    const UpaGeometry g4{4, 4, 0.5, 0.5};
    const CMat broadside = upa_response(0.0, 0.7, g4);
    for (Index j = 0; j < 4; j++)
        for (Index i = 0; i < 4; i++)
            CHECK(std::abs(broadside(i, j) - cplx(0.25)) < 1e-15);

    const UpaGeometry g1{1, 1, 0.5, 0.5};
    CHECK(std::abs(upa_response(0.3, -0.2, g1)(0, 0) - cplx(1)) < 1e-15);

    const UpaGeometry col{4, 1, 0.5, 0.5};
    const CMat endfire = upa_response(half_pi, 0.0, col);
    const double expected[4] = {0.5, -0.5, 0.5, -0.5};
    for (Index i = 0; i < 4; i++)
    {
        CHECK(std::abs(endfire(i, 0).real() - expected[i]) < 1e-12);
        CHECK(std::abs(endfire(i, 0).imag()) < 1e-12);
    }
}

TEST_CASE("upa_response entries and normalization")
{
    Rng rng(21);
    const UpaGeometry g{5, 7, 0.5, 0.5};
    const double scale = std::sqrt(35.0);
    for (int c = 0; c < 100; c++)
    {
        const double theta = rng.uniform(-half_pi, half_pi);
        const double phi = rng.uniform(-half_pi, half_pi);
        const CMat a = upa_response(theta, phi, g);
        CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12)); // Frobenius 1
        for (Index j = 0; j < g.ny; j++)
            for (Index i = 0; i < g.nx; i++)
                CHECK(std::abs(a(i, j)) * scale == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("ula_steering analytic cases")
{
    const UlaGeometry g8{8, 0.5};
    const CVec broadside = ula_steering(0.0, g8);
    for (Index i = 0; i < 8; i++)
        CHECK(std::abs(broadside(i) - cplx(1)) < 1e-15);

    CHECK(ula_steering(1.1, UlaGeometry{1, 0.5})(0) == cplx(1));

    const CVec endfire = ula_steering(half_pi, UlaGeometry{3, 0.5});
    CHECK(std::abs(endfire(0) - cplx(1)) < 1e-12);
    CHECK(std::abs(endfire(1) - cplx(-1)) < 1e-12);
    CHECK(std::abs(endfire(2) - cplx(1)) < 1e-12);

    Rng rng(5);
    for (int c = 0; c < 50; c++)
    {
        const CVec a = ula_steering(rng.uniform(-half_pi, half_pi), g8);
        for (Index i = 0; i < 8; i++)
            CHECK(std::abs(a(i)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("assemble_upa_channel with a single unit path")
{
    const UpaGeometry g{4, 4, 0.5, 0.5};
    PathSet p;
    p.gains = CVec::Ones(1);
    p.elevation = RVec::Zero(1);
    p.azimuth = RVec::Zero(1);
    const auto ch = assemble_upa_channel(g, p);
    for (Index j = 0; j < 4; j++)
        for (Index i = 0; i < 4; i++)
            CHECK(std::abs(ch.H(i, j) - cplx(0.25)) < 1e-15);
}

TEST_CASE("gen_upa_channel is seed-deterministic and matches the term sum")
{
    const UpaGeometry g{10, 10, 0.5, 0.5};
    Rng r1(77), r2(77);
    const auto a = gen_upa_channel(g, 10, r1);
    const auto b = gen_upa_channel(g, 10, r2);
    CHECK(bitwise_equal(a.H, b.H));

    // independent term-by-term accumulation from the stored path parameters
    CMat sum = CMat::Zero(10, 10);
    for (Index l = 0; l < 10; l++)
    {
        const double st = std::sin(a.paths.elevation(l));
        const double px = 2.0 * std::numbers::pi * g.dx * st * std::cos(a.paths.azimuth(l));
        const double py = 2.0 * std::numbers::pi * g.dy * st * std::sin(a.paths.azimuth(l));
        for (Index n = 0; n < 10; n++)
            for (Index m = 0; m < 10; m++)
                sum(m, n) += a.paths.gains(l) * 0.1 *
                             std::polar(1.0, px * static_cast<double>(m) +
                                                 py * static_cast<double>(n));
    }
    CHECK((a.H - sum).norm() < 1e-12 * sum.norm());
}

TEST_CASE("gen_ula_channel cases")
{
    const UlaGeometry rx{4, 0.5}, tx{6, 0.5};
    SUBCASE("single boresight path gives the all-ones matrix")
    {
        JointPathSet p;
        p.gains = CVec::Ones(1);
        p.departure = RVec::Zero(1);
        p.arrival = RVec::Zero(1);
        const auto ch = assemble_ula_channel(rx, tx, p);
        for (Index j = 0; j < 6; j++)
            for (Index i = 0; i < 4; i++)
                CHECK(std::abs(ch.H(i, j) - cplx(1)) < 1e-14);
    }
    SUBCASE("rank <= path count")
    {
        Rng rng(13);
        const UlaGeometry six{6, 0.5};
        const auto ch = gen_ula_channel(six, six, 2, rng);
        // any 3x3 submatrix of a rank-2 matrix is singular
        for (int c = 0; c < 20; c++)
        {
            Index rsel[3], csel[3];
            for (int i = 0; i < 3; i++)
            {
                rsel[i] = static_cast<Index>(rng.bounded(6));
                csel[i] = static_cast<Index>(rng.bounded(6));
            }
            if (rsel[0] == rsel[1] || rsel[1] == rsel[2] || rsel[0] == rsel[2])
                continue;
            if (csel[0] == csel[1] || csel[1] == csel[2] || csel[0] == csel[2])
                continue;
            CMat sub(3, 3);
            for (int i = 0; i < 3; i++)
                for (int j = 0; j < 3; j++)
                    sub(i, j) = ch.H(rsel[i], csel[j]);
            CHECK(std::abs(det3(sub)) < 1e-9 * std::pow(sub.norm(), 3));
        }
    }
    SUBCASE("seed determinism")
    {
        Rng r1(3), r2(3);
        CHECK(bitwise_equal(gen_ula_channel(rx, tx, 5, r1).H, gen_ula_channel(rx, tx, 5, r2).H));
    }
}
