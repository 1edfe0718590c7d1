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

#include "hmimo/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace hmimo
{
    struct RunOutput
    {
        std::filesystem::path csv;
        std::filesystem::path svg;
        std::filesystem::path dump; // HCH1 file (channel-dump only)
        std::vector<std::string> warnings;
    };

    // ---- eig-spectrum ----------------------------------------------------------------------------

    struct EigCurve
    {
        std::string spacing; // decimal receive spacing in wavelengths, or "iid" for the reference
        std::string rx;      // receive array label
        RVector eigenvalues; // descending
    };

    std::vector<EigCurve> compute_eig_spectrum(const ExperimentConfig &cfg);
    RunOutput run_eig_spectrum(const ExperimentConfig &cfg);

    // ---- se-sweep / theory-vs-sim ----------------------------------------------------------------

    struct SeRow
    {
        std::string scheme; // mrt | zf | mmse | zf-theory
        double snr_db = 0.0;
        double sum_rate = 0.0;
        double std_error = 0.0;
        std::size_t n_trials = 0;
        std::string tx;
        std::string rx;
        int users = 0;
        double rel_gap = -1.0; // |theory − sim| / sim on zf-theory rows, negative elsewhere
    };

    struct SeTable
    {
        std::vector<SeRow> rows;
        std::vector<std::string> warnings; // infeasible combinations that were skipped
    };

    SeTable compute_se_sweep(const ExperimentConfig &cfg, int threads = 0);
    SeTable compute_theory_vs_sim(const ExperimentConfig &cfg, int threads = 0);

    RunOutput run_se_sweep(const ExperimentConfig &cfg, int threads = 0);
    RunOutput run_theory_vs_sim(const ExperimentConfig &cfg, int threads = 0);

    // ---- channel-dump ----------------------------------------------------------------------------

    // Writes `count` realizations (trials 0..count−1) of the config's single parameter set to
    // output_dir/channels.hch
    RunOutput run_channel_dump(const ExperimentConfig &cfg, std::size_t count, int threads = 0);

    // CSV writers, exposed for tests. Column order is fixed.
    std::string eig_spectrum_csv(const std::vector<EigCurve> &curves, const ExperimentConfig &cfg);
    std::string se_csv(const SeTable &table, const ExperimentConfig &cfg, bool with_gap);
}
