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

#ifndef CEAAD_CHANNEL_HPP
#define CEAAD_CHANNEL_HPP

#include "ceaad/numerics.hpp"
#include "ceaad/rng.hpp"

namespace ceaad
{
    // Uniform planar array, nx elements along x, ny along y.
    // Spacings are normalized to the carrier wavelength (d/lambda).
    struct UpaGeometry
    {
        Index nx = 1;
        Index ny = 1;
        double dx = 0.5;
        double dy = 0.5;

        Index elements() const { return nx * ny; }
    };

    // Uniform linear array with n elements at normalized spacing d/lambda.
    struct UlaGeometry
    {
        Index n = 1;
        double d = 0.5;
    };

    // Multipath parameters of one planar-array channel draw.
    // gains[l] ~ CN(0,1); angles are radians in [-pi/2, pi/2].
    struct PathSet
    {
        CVec gains;
        RVec elevation; // elevation angle of departure per path
        RVec azimuth;   // azimuth angle of departure per path

        Index count() const { return gains.size(); }
    };

    // Multipath parameters of one linear-array link (departure/arrival angles).
    struct JointPathSet
    {
        CVec gains;
        RVec departure; // transmit-side angle per path
        RVec arrival;   // receive-side angle per path

        Index count() const { return gains.size(); }
    };

    struct ChannelRealization
    {
        CMat H; // nx x ny
        UpaGeometry geometry;
        PathSet paths;
    };

    struct JointChannelRealization
    {
        CMat H; // n_rx x n_tx
        UlaGeometry rx;
        UlaGeometry tx;
        JointPathSet paths;
    };

    // Planar-array response at elevation theta, azimuth phi. Entry (m, n),
    // zero-based, is
    //   exp(j*m*2pi*dx*sin(theta)cos(phi)) * exp(j*n*2pi*dy*sin(theta)sin(phi))
    //     / sqrt(nx*ny),
    // so the Frobenius norm is 1 for every angle pair.
    CMat upa_response(double theta, double phi, const UpaGeometry &geom);

    // Linear-array steering vector, entry n = exp(-j*2pi*n*d*sin(theta)),
    // zero-based, unnormalized (unit-modulus entries).
    CVec ula_steering(double theta, const UlaGeometry &geom);

    // Deterministic composition H = sum_l gains[l] * upa_response(theta_l, phi_l).
    ChannelRealization assemble_upa_channel(const UpaGeometry &geom, PathSet paths);

    // Deterministic composition H = sum_l gains[l] * a_rx(arr_l) * a_tx(dep_l)^H.
    JointChannelRealization assemble_ula_channel(const UlaGeometry &rx, const UlaGeometry &tx,
                                                 JointPathSet paths);

    // Random multipath draw: gains CN(0,1), angles uniform on [-pi/2, pi/2].
    // Per path the stream is consumed as gain, elevation, azimuth.
    ChannelRealization gen_upa_channel(const UpaGeometry &geom, Index n_paths, Rng &rng);

    // Random link draw, per path: gain, arrival angle, departure angle.
    JointChannelRealization gen_ula_channel(const UlaGeometry &rx, const UlaGeometry &tx,
                                            Index n_paths, Rng &rng);
} // namespace ceaad

#endif
