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

#ifndef CEAAD_RNG_HPP
#define CEAAD_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace ceaad
{
    // splitmix64 finalizer, used for seed expansion and stream derivation.
    inline std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // FNV-1a over a byte string, used to hash stream tags.
    inline std::uint64_t fnv1a64(std::string_view s)
    {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : s)
            h = (h ^ c) * 1099511628211ull;
        return h;
    }

    // Deterministic random stream (xoshiro256**), self-contained so that every
    // result of the library is a pure function of the seeds handed to it,
    // independent of the C++ standard library implementation.
    //
    // Streams are never shared between concurrent units of work; derive a
    // fresh stream per (seed, index, tag) instead.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed)
        {
            seed_from(mix64(seed), mix64(seed ^ 0xA3C59AC2ull));
        }

        // Splittable derivation: child streams for (master, index, tag) are
        // decoupled, so adding a consumer never perturbs existing ones.
        // The two lanes form a 128-bit intermediate hash of the triple.
        static Rng derive(std::uint64_t master_seed, std::uint64_t index, std::string_view tag)
        {
            const std::uint64_t h = fnv1a64(tag);
            const std::uint64_t lane0 = mix64(master_seed ^ h);
            const std::uint64_t lane1 = mix64(lane0 ^ (index * 0x9E3779B97F4A7C15ull) ^ (h << 1));
            Rng r(0);
            r.seed_from(lane0, lane1);
            return r;
        }

        std::uint64_t next_u64()
        {
            const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
            const std::uint64_t t = s_[1] << 17;
            s_[2] ^= s_[0];
            s_[3] ^= s_[1];
            s_[1] ^= s_[2];
            s_[0] ^= s_[3];
            s_[2] ^= t;
            s_[3] = rotl(s_[3], 45);
            return result;
        }

        // Uniform on [0, 1), 53-bit resolution.
        double uniform01()
        {
            return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        }

        double uniform(double lo, double hi)
        {
            return lo + (hi - lo) * uniform01();
        }

        // Uniform integer on [0, n), n >= 1.
        std::uint64_t bounded(std::uint64_t n)
        {
            return static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
        }

        bool bernoulli(double p)
        {
            return uniform01() < p;
        }

        // Circularly-symmetric complex Gaussian CN(0, variance):
        // real and imaginary parts are independent N(0, variance/2).
        // Consumes exactly two uniforms (Box-Muller).
        std::complex<double> complex_normal(double variance)
        {
            const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
            const double u2 = uniform01();
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double a = 2.0 * std::numbers::pi * u2;
            const double s = std::sqrt(variance / 2.0);
            return {s * r * std::cos(a), s * r * std::sin(a)};
        }

    private:
        void seed_from(std::uint64_t lane0, std::uint64_t lane1)
        {
            s_[0] = mix64(lane0);
            s_[1] = mix64(lane1 ^ s_[0]);
            s_[2] = mix64(s_[1]);
            s_[3] = mix64(s_[2]);
            if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0)
                s_[0] = 0x85EB75077FFE1F1Dull; // all-zero state is invalid for xoshiro
        }

        static std::uint64_t rotl(std::uint64_t x, int k)
        {
            return (x << k) | (x >> (64 - k));
        }

        std::uint64_t s_[4];
    };
} // namespace ceaad

#endif
