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

#include "hmimo/rate.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hmimo
{
    // Array parameters that an experiment sweeps over. Every combination of shape and spacing is run.
    struct ArraySweep
    {
        std::vector<std::pair<int, int>> shapes; // (n_h, n_v)
        std::vector<double> spacings;            // in wavelengths
    };

    // One point of the sweep: the geometry of a single simulated downlink
    struct ParameterSet
    {
        ArrayGeometry tx;
        ArrayGeometry rx;
        int users = 1;

        std::string tx_label() const; // e.g. "30x30@1/6"
        std::string rx_label() const;
    };

    // Flat key/value experiment description. Example:
    //
    //   tx.shape          = 10x10
    //   tx.spacing_lambda = 1/6          # Δ_s in wavelengths
    //   rx.shape          = 4x4, 6x6     # lists sweep
    //   rx.spacing_lambda = 1/6
    //   users             = 3
    //   snr_db            = -10:5:30     # start:step:stop or a list
    //   schemes           = mrt, zf, mmse
    //   trials            = 800
    //   seed              = 1
    //   normalization     = total-K      # or per-user
    //   phase             = ones         # or random
    //   output_dir        = out
    struct ExperimentConfig
    {
        ArraySweep tx;
        ArraySweep rx;
        int users = 3;
        std::vector<double> snr_grid_db;
        std::vector<Scheme> schemes;
        std::size_t n_trials = 800;
        std::uint64_t seed = 1;
        PowerNormalization normalization = PowerNormalization::total_streams;
        PhaseMode phase = PhaseMode::ones;
        std::filesystem::path output_dir = "out";

        // Throws ConfigError on any violated invariant
        void validate() const;

        std::vector<ParameterSet> parameter_sets() const;
        MonteCarloOptions monte_carlo_options(int threads = 0) const;

        // Canonical text form (output_dir excluded) and its 64-bit FNV-1a hash as 16 hex digits
        std::string canonical() const;
        std::string hash() const;
    };

    // Parses the key/value format; unknown or repeated keys are errors. `source` names the input in messages.
    ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");
    ExperimentConfig load_config(const std::filesystem::path &path);

    // Accepts decimals and fractions such as "1/6"
    double parse_number(std::string_view text);

    // Shortest round-trip decimal form; used for every number written to CSV
    std::string format_number(double v);

    // "1/6" when the spacing is the reciprocal of an integer, otherwise the decimal form
    std::string spacing_label(double spacing);
}
