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

#include "ceaad/channel.hpp"

#include <cmath>
#include <numbers>

namespace ceaad
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr double half_pi = std::numbers::pi / 2.0;

        cplx jexp(double phase)
        {
            return {std::cos(phase), std::sin(phase)};
        }
    } // namespace

    CMat upa_response(double theta, double phi, const UpaGeometry &geom)
    {
        const double px = two_pi * geom.dx * std::sin(theta) * std::cos(phi);
        const double py = two_pi * geom.dy * std::sin(theta) * std::sin(phi);
        const double scale = 1.0 / std::sqrt(static_cast<double>(geom.elements()));
        CMat a(geom.nx, geom.ny);
        for (Index n = 0; n < geom.ny; n++)
            for (Index m = 0; m < geom.nx; m++)
                a(m, n) = scale * jexp(px * static_cast<double>(m) + py * static_cast<double>(n));
        return a;
    }

    CVec ula_steering(double theta, const UlaGeometry &geom)
    {
        const double step = -two_pi * geom.d * std::sin(theta);
        CVec a(geom.n);
        for (Index n = 0; n < geom.n; n++)
            a(n) = jexp(step * static_cast<double>(n));
        return a;
    }

    ChannelRealization assemble_upa_channel(const UpaGeometry &geom, PathSet paths)
    {
        CMat h = CMat::Zero(geom.nx, geom.ny);
        for (Index l = 0; l < paths.count(); l++)
            h += paths.gains(l) * upa_response(paths.elevation(l), paths.azimuth(l), geom);
        return {std::move(h), geom, std::move(paths)};
    }

    JointChannelRealization assemble_ula_channel(const UlaGeometry &rx, const UlaGeometry &tx,
                                                 JointPathSet paths)
    {
        CMat h = CMat::Zero(rx.n, tx.n);
        for (Index l = 0; l < paths.count(); l++)
            h += paths.gains(l) * ula_steering(paths.arrival(l), rx) *
                 ula_steering(paths.departure(l), tx).adjoint();
        return {std::move(h), rx, tx, std::move(paths)};
    }

    ChannelRealization gen_upa_channel(const UpaGeometry &geom, Index n_paths, Rng &rng)
    {
        PathSet paths;
        paths.gains.resize(n_paths);
        paths.elevation.resize(n_paths);
        paths.azimuth.resize(n_paths);
        for (Index l = 0; l < n_paths; l++)
        {
            paths.gains(l) = rng.complex_normal(1.0);
            paths.elevation(l) = rng.uniform(-half_pi, half_pi);
            paths.azimuth(l) = rng.uniform(-half_pi, half_pi);
        }
        return assemble_upa_channel(geom, std::move(paths));
    }

    JointChannelRealization gen_ula_channel(const UlaGeometry &rx, const UlaGeometry &tx,
                                            Index n_paths, Rng &rng)
    {
        JointPathSet paths;
        paths.gains.resize(n_paths);
        paths.departure.resize(n_paths);
        paths.arrival.resize(n_paths);
        for (Index l = 0; l < n_paths; l++)
        {
            paths.gains(l) = rng.complex_normal(1.0);
            paths.arrival(l) = rng.uniform(-half_pi, half_pi);
            paths.departure(l) = rng.uniform(-half_pi, half_pi);
        }
        return assemble_ula_channel(rx, tx, std::move(paths));
    }
} // namespace ceaad
