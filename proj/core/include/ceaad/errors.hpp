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

#ifndef CEAAD_ERRORS_HPP
#define CEAAD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ceaad
{
    // Base class for all contract violations raised by this library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Operand shapes do not agree (vector lengths, matrix dimensions).
    class DimensionMismatch : public Error
    {
    public:
        using Error::Error;
    };

    // A probability argument lies outside [0, 1].
    class InvalidProbability : public Error
    {
    public:
        using Error::Error;
    };

    // Requested block size does not divide the antenna grid.
    class BlockShapeMismatch : public Error
    {
    public:
        using Error::Error;
    };

    // A channel coefficient on the diagnosed support is numerically zero,
    // so the per-antenna blockage coefficient cannot be recovered.
    class ChannelNull : public Error
    {
    public:
        using Error::Error;
    };

    // NMSE reference has zero norm.
    class ZeroTruth : public Error
    {
    public:
        using Error::Error;
    };

    // Malformed fixture or experiment config file.
    class ParseError : public Error
    {
    public:
        using Error::Error;
    };
} // namespace ceaad

#endif
