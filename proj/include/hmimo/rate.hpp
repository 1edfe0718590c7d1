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

#include "hmimo/precoding.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hmimo
{
    enum class PhaseMode
    {
        ones,  // φ = 1 (default; the surface phases are never optimized)
        random // seeded uniform phases per trial, to exercise φ-invariance
    };

    struct SeResult
    {
        RMatrix per_stream_rate; // M × n_r, bits/s/Hz, averaged over trials
        double sum_rate = 0.0;
        double snr_db = 0.0;
        Scheme scheme = Scheme::zf;
        std::size_t n_trials = 0;
        double std_error = 0.0; // of the sum rate
    };

    struct MonteCarloOptions
    {
        std::size_t n_trials = 800;
        std::uint64_t seed = 1;
        PowerNormalization normalization = PowerNormalization::total_streams;
        PhaseMode phase = PhaseMode::ones;
        double noise_var = 1.0; // σ_w²; SNR is p_u / σ_w²
        int threads = 0;        // 0 = OpenMP default
    };

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    // SINR of every stream, laid out users × streams-per-user. Interference sums over all other streams
    // of all users.
    RMatrix per_stream_sinr(const EffectiveChannel &ch, const Precoder &v, double p_u, double noise_var);

    // Per-stream log2(1 + SINR), same layout as per_stream_sinr
    RMatrix per_stream_rate(const EffectiveChannel &ch, const Precoder &v, double p_u, double noise_var);

    // Throws ConfigError when ZF/MMSE are requested with n_s < K, or receive arrays differ in stream count
    void check_feasible(const MultiUserLink &link, Scheme scheme);
    bool zf_feasible(const MultiUserLink &link) noexcept;

    // Rates of one trial for every SNR point: result[s] holds the K per-stream rates at snr_db[s]
    std::vector<RVector> evaluate_trial(const MultiUserLink &link, Scheme scheme, std::span<const double> snr_db,
                                        const MonteCarloOptions &opt, std::uint64_t trial);

    // Reduces per-trial rates (trial-major) into one SeResult per SNR point, in trial order
    std::vector<SeResult> reduce_trials(const std::vector<std::vector<RVector>> &trials, const MultiUserLink &link,
                                        Scheme scheme, std::span<const double> snr_db);

    // OpenMP over trials; bit-identical for any thread count
    std::vector<SeResult> monte_carlo_se(const MultiUserLink &link, Scheme scheme, std::span<const double> snr_db,
                                         const MonteCarloOptions &opt);

    // ZF stream gains β_i = 1 / [(H_a H_aᴴ)⁻¹]_ii. Throws SingularError.
    RVector zf_beta(const CMatrix &stacked_wavenumber);
    inline RVector zf_beta(const ChannelRealization &r) { return zf_beta(r.stacked_wavenumber); }

    struct TheoreticalZfRate
    {
        RMatrix per_stream_rate; // M × n_r
        double sum_rate = 0.0;
        std::size_t n_s = 0;
        std::size_t streams = 0;   // K
        double avg_tx_var = 0.0;   // σ̂_s²
        double p_u = 0.0;
        double noise_var = 1.0;
    };

    // Average-variance approximation of the ZF rate:
    //   R(m, i) = log2(1 + p_u/(K σ_w²) · (n_s − K + 1) · N_r N_s rx_var[i] σ̂_s²)
    // With PowerNormalization::per_user, K is replaced by the per-user stream count n_r in both places.
    // Feasibility always requires n_s >= K.
    TheoreticalZfRate theoretical_zf_rate(const std::vector<SpectralVariance> &per_user, std::size_t n_s,
                                          std::size_t streams, double p_u, double noise_var = 1.0,
                                          PowerNormalization norm = PowerNormalization::total_streams);

    struct BetaCheck
    {
        double empirical_mean = 0.0;
        double std_error = 0.0;
        double closed_form = 0.0;
        double relative_deviation = 0.0;
        std::size_t n_trials = 0;
    };

    // Empirical E{β₁} for a K × n_s wavenumber channel whose row k has the variance profile of receive
    // harmonic k mod n_r, compared with (n_s − K + 1) · N_r N_s rx_var[0] · σ̂_s².
    BetaCheck expected_beta_check(const SpectralVariance &sv, std::size_t streams, std::size_t n_trials,
                                  std::uint64_t seed, int threads = 0);
}
