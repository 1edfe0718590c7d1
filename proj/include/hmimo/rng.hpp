// SPDX-License-Identifier: Apache-2.0
//
// hmimo: wavenumber-domain channel simulation for multi-user holographic MIMO surfaces
// Copyright (C) 2026 The hmimo authors
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

#pragma once

#include "hmimo/types.hpp"

#include <cstdint>
#include <random>

namespace hmimo::rng
{
    // Stream tags separate independent uses of the same (seed, trial) pair
    enum class StreamTag : std::uint64_t
    {
        channel = 0x6368616e6e656c00ULL, // one substream per user: tag + user
        phase = 0x7068617365000000ULL,
        beta_check = 0x6265746100000000ULL
    };

    constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Counter-style key derivation: the substream depends only on (seed, trial, tag, sub), never on
    // the order in which trials are executed.
    constexpr std::uint64_t substream_key(std::uint64_t seed, std::uint64_t trial, StreamTag tag,
                                          std::uint64_t sub = 0) noexcept
    {
        std::uint64_t k = splitmix64(seed);
        k = splitmix64(k ^ trial);
        k = splitmix64(k ^ static_cast<std::uint64_t>(tag));
        return splitmix64(k ^ sub);
    }

    using Engine = std::mt19937_64;

    inline Engine substream(std::uint64_t seed, std::uint64_t trial, StreamTag tag, std::uint64_t sub = 0)
    {
        const std::uint64_t key = substream_key(seed, trial, tag, sub);
        std::seed_seq seq{std::uint32_t(key), std::uint32_t(key >> 32)};
        return Engine(seq);
    }

    // Circularly-symmetric complex Gaussian, unit variance (real/imag parts N(0, 1/2))
    class ComplexNormal
    {
    public:
        cdouble operator()(Engine &eng)
        {
            const double re = normal_(eng);
            const double im = normal_(eng);
            return {re * inv_sqrt2, im * inv_sqrt2};
        }

    private:
        static constexpr double inv_sqrt2 = 0.70710678118654752440;
        std::normal_distribution<double> normal_{0.0, 1.0};
    };
}
