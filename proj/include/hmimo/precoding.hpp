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

#include "hmimo/channel.hpp"

#include <cstdint>
#include <string_view>

namespace hmimo
{
    enum class Scheme
    {
        mrt,
        zf,
        mmse
    };

    std::string_view to_string(Scheme s) noexcept;
    Scheme parse_scheme(std::string_view name); // throws ConfigError

    // How precoder columns are scaled. total_streams divides by √K so that Tr(VVᴴ) = 1 for any number
    // of users; per_user divides by √n_r (one user's stream count), giving Tr(VVᴴ) = M.
    enum class PowerNormalization
    {
        total_streams,
        per_user
    };

    std::string_view to_string(PowerNormalization n) noexcept;
    PowerNormalization parse_normalization(std::string_view name); // "total-K" | "per-user"

    // H̃_a = H_a U_sᴴ diag(φ), K × N_s
    struct EffectiveChannel
    {
        CMatrix matrix;
        CVector phase;
        std::size_t users = 1;

        Eigen::Index streams() const noexcept { return matrix.rows(); }
        Eigen::Index streams_per_user() const noexcept { return matrix.rows() / Eigen::Index(users); }
    };

    struct Precoder
    {
        CMatrix matrix; // N_s × K, column k drives stream k
        Scheme scheme = Scheme::zf;
        PowerNormalization normalization = PowerNormalization::total_streams;
    };

    // Phases are accepted when ||φ_k| − 1| <= 1e-9; otherwise ValidationError
    EffectiveChannel effective_channel(const ChannelRealization &realization, const WavenumberBasis &tx_basis,
                                       const CVector &phase);
    EffectiveChannel effective_channel(const CMatrix &stacked_wavenumber, std::size_t users,
                                       const WavenumberBasis &tx_basis, const CVector &phase);

    CVector unit_phase(Eigen::Index n);
    CVector random_phase(Eigen::Index n, std::uint64_t seed, std::uint64_t trial);

    // Gram matrices with condition number above this are treated as singular
    inline constexpr double max_gram_condition = 1e12;

    // Unnormalized ZF directions F = H̃ᴴ(H̃H̃ᴴ)⁻¹ (columns f_i). Throws SingularError.
    CMatrix zf_directions(const CMatrix &channel);

    Precoder zf_precoder(const EffectiveChannel &ch, PowerNormalization norm = PowerNormalization::total_streams);
    Precoder mrt_precoder(const EffectiveChannel &ch, PowerNormalization norm = PowerNormalization::total_streams);
    // Regularized ZF, F = H̃ᴴ(H̃H̃ᴴ + (Kσ_w²/p_u) I)⁻¹, columns normalized as for ZF
    Precoder mmse_precoder(const EffectiveChannel &ch, double p_u, double noise_var,
                           PowerNormalization norm = PowerNormalization::total_streams);

    Precoder make_precoder(Scheme scheme, const EffectiveChannel &ch, double p_u, double noise_var,
                           PowerNormalization norm = PowerNormalization::total_streams);
}
