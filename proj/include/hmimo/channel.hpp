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

#include "hmimo/rng.hpp"
#include "hmimo/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hmimo
{
    // Shared, immutable description of one downlink: a BS surface serving M users.
    // All users share the transmit basis; receive bases and variances are stored per user.
    struct MultiUserLink
    {
        WavenumberBasis tx;
        std::vector<WavenumberBasis> rx;
        std::vector<SpectralVariance> variance;

        std::size_t users() const noexcept { return rx.size(); }
        std::size_t tx_harmonics() const noexcept { return tx.size(); } // n_s
        std::size_t streams() const noexcept;                           // K = Σ_m n_r^(m)
        std::size_t rx_elements_total() const noexcept;                 // Σ_m N_r^(m)
    };

    // Builds the link for M users with identical receive arrays
    MultiUserLink make_link(const ArrayGeometry &tx, const ArrayGeometry &rx, int users);

    enum class SpaceDomain
    {
        compute,
        skip
    };

    // One Monte Carlo draw. Stacking is user-major: rows of user m follow those of user m−1.
    struct ChannelRealization
    {
        std::vector<CMatrix> per_user_wavenumber; // H_a^(m), n_r × n_s
        CMatrix stacked_wavenumber;               // H_a, K × n_s
        CMatrix stacked_space;                    // H, (Σ N_r) × N_s; empty when skipped
        std::uint64_t seed = 0;
        std::uint64_t trial_index = 0;
    };

    struct CorrelationSpectrum
    {
        RVector eigenvalues; // descending
        std::string geometry_tag;
    };

    // Σ ⊙ W with W i.i.d. CN(0, 1)
    CMatrix sample_wavenumber_channel(const SpectralVariance &sv, rng::Engine &engine);

    // Draws user m from substream (seed, trial, channel, m) so every trial is reproducible on its own
    ChannelRealization assemble_multiuser_channel(const std::vector<SpectralVariance> &per_user,
                                                  const WavenumberBasis &tx_basis,
                                                  const std::vector<WavenumberBasis> &rx_bases,
                                                  std::uint64_t seed, std::uint64_t trial_index,
                                                  SpaceDomain space = SpaceDomain::compute);

    inline ChannelRealization assemble_multiuser_channel(const MultiUserLink &link, std::uint64_t seed,
                                                         std::uint64_t trial_index,
                                                         SpaceDomain space = SpaceDomain::compute)
    {
        return assemble_multiuser_channel(link.variance, link.tx, link.rx, seed, trial_index, space);
    }

    // Single-sided receive correlation R = U_r diag(N_r · rx_var) U_rᴴ (trace N_r), eigenvalues sorted
    // descending. The transmit side is averaged out.
    CorrelationSpectrum receive_correlation_spectrum(const SpectralVariance &sv, const WavenumberBasis &rx_basis);

    // Flat reference spectrum of an i.i.d. Rayleigh channel (R = I)
    CorrelationSpectrum iid_correlation_spectrum(std::size_t rx_elements);

    // Singular-value rank with threshold rel_tol · σ_max
    Eigen::Index numerical_rank(const CMatrix &m, double rel_tol = 1e-8);
}
