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

// hmimo-sim: command-line front end for the simulation experiments.
//
// On failure a single JSON object {"error": <category>, "message": ...} is written to stderr and the process
// exits with a category-specific code: 2 config, 3 io, 4 numerical (domain, validation, singular, degenerate),
// 1 anything else.

#include "hmimo/experiment.hpp"
#include "hmimo/types.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>

namespace
{
    struct CommonArgs
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::optional<std::string> out;
        int threads = 0;
    };

    void add_common(CLI::App *cmd, CommonArgs &args)
    {
        cmd->add_option("--config", args.config, "experiment config file")->required();
        cmd->add_option("--seed", args.seed, "override the config seed");
        cmd->add_option("--trials", args.trials, "override the number of Monte Carlo trials");
        cmd->add_option("--out", args.out, "override the output directory");
        cmd->add_option("--threads", args.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    }

    hmimo::ExperimentConfig resolve(const CommonArgs &args)
    {
        auto cfg = hmimo::load_config(args.config);
        if (args.seed)
            cfg.seed = *args.seed;
        if (args.trials)
            cfg.n_trials = *args.trials;
        if (args.out)
            cfg.output_dir = *args.out;
        cfg.validate();
        return cfg;
    }

    int fail(const std::string &category, const std::string &message, int code)
    {
        nlohmann::json j{{"error", category}, {"message", message}};
        std::cerr << j.dump() << '\n';
        return code;
    }

    int exit_code(hmimo::ErrorCategory c)
    {
        switch (c)
        {
        case hmimo::ErrorCategory::config: return 2;
        case hmimo::ErrorCategory::io: return 3;
        default: return 4;
        }
    }

    void report(const hmimo::RunOutput &out)
    {
        for (const auto &w : out.warnings)
            std::cerr << "warning: " << w << '\n';
        for (const auto *p : {&out.csv, &out.svg, &out.dump})
            if (!p->empty())
                std::cout << p->string() << '\n';
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Wavenumber-domain channel simulation for multi-user holographic MIMO"};
    app.require_subcommand(1);

    CommonArgs eig, se, tvs, dump;
    std::size_t count = 2;
    auto *eig_cmd = app.add_subcommand("eig-spectrum", "receive correlation eigenvalue spectrum");
    auto *se_cmd = app.add_subcommand("se-sweep", "sum spectral efficiency versus SNR per precoder");
    auto *tvs_cmd = app.add_subcommand("theory-vs-sim", "closed-form ZF rate against Monte Carlo");
    auto *dump_cmd = app.add_subcommand("channel-dump", "write channel realizations in HCH1 format");
    add_common(eig_cmd, eig);
    add_common(se_cmd, se);
    add_common(tvs_cmd, tvs);
    add_common(dump_cmd, dump);
    dump_cmd->add_option("--count", count, "number of realizations")->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::Error &e)
    {
        return fail("usage", e.what(), 2);
    }

    try
    {
        if (*eig_cmd)
            report(hmimo::run_eig_spectrum(resolve(eig)));
        else if (*se_cmd)
            report(hmimo::run_se_sweep(resolve(se), se.threads));
        else if (*tvs_cmd)
            report(hmimo::run_theory_vs_sim(resolve(tvs), tvs.threads));
        else if (*dump_cmd)
            report(hmimo::run_channel_dump(resolve(dump), count, dump.threads));
        return 0;
    }
    catch (const hmimo::Error &e)
    {
        return fail(std::string(hmimo::to_string(e.category())), e.what(), exit_code(e.category()));
    }
    catch (const std::exception &e)
    {
        return fail("internal", e.what(), 1);
    }
}
