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

#include "hmimo/experiment.hpp"
#include "hmimo/channel_dump.hpp"
#include "hmimo/plot.hpp"

#include <omp.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hmimo
{
    namespace
    {
        void write_text(const std::filesystem::path &path, const std::string &text)
        {
            std::error_code ec;
            if (path.has_parent_path())
                std::filesystem::create_directories(path.parent_path(), ec);
            if (ec)
                throw IoError("cannot create output directory " + path.parent_path().string() + ": " + ec.message());
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw IoError("cannot open for writing: " + path.string());
            out << text;
            if (!out)
                throw IoError("failed writing: " + path.string());
        }

        std::string infeasible_note(Scheme s, const ParameterSet &set, const MultiUserLink &link)
        {
            std::ostringstream msg;
            msg << "skipping " << to_string(s) << " for tx " << set.tx_label() << " rx " << set.rx_label() << " M="
                << set.users << ": K = " << link.streams() << " streams exceed n_s = " << link.tx_harmonics();
            return msg.str();
        }

        void append_mc(SeTable &table, const std::vector<SeResult> &res, const ParameterSet &set)
        {
            for (const auto &r : res)
            {
                SeRow row;
                row.scheme = std::string(to_string(r.scheme));
                row.snr_db = r.snr_db;
                row.sum_rate = r.sum_rate;
                row.std_error = r.std_error;
                row.n_trials = r.n_trials;
                row.tx = set.tx_label();
                row.rx = set.rx_label();
                row.users = set.users;
                table.rows.push_back(std::move(row));
            }
        }

        const PlotSpec se_plot{"Spectral efficiency", "snr_db", "sum_rate", {"scheme", "tx", "rx"},
                               "SNR [dB]", "sum SE [bit/s/Hz]"};
    }

    std::vector<EigCurve> compute_eig_spectrum(const ExperimentConfig &cfg)
    {
        cfg.validate();
        std::vector<EigCurve> curves;
        std::set<std::pair<int, int>> references;
        for (const auto &set : cfg.parameter_sets())
        {
            const auto tx = build_harmonic_matrix(set.tx, LinkSide::transmit);
            const auto rx = build_harmonic_matrix(set.rx, LinkSide::receive);
            const auto sv = build_spectral_variance(tx, rx);
            auto spec = receive_correlation_spectrum(sv, rx);
            curves.push_back({format_number(set.rx.spacing), set.rx_label(), std::move(spec.eigenvalues)});
        }
        for (const auto &shape : cfg.rx.shapes)
            if (references.insert(shape).second)
            {
                const auto n = std::size_t(shape.first) * std::size_t(shape.second);
                curves.push_back({"iid", std::to_string(shape.first) + "x" + std::to_string(shape.second),
                                  iid_correlation_spectrum(n).eigenvalues});
            }
        return curves;
    }

    std::string eig_spectrum_csv(const std::vector<EigCurve> &curves, const ExperimentConfig &cfg)
    {
        const auto hash = cfg.hash();
        std::ostringstream out;
        out << "spacing,index,eigenvalue,rx,config_hash,seed\n";
        for (const auto &c : curves)
            for (Eigen::Index k = 0; k < c.eigenvalues.size(); ++k)
                out << c.spacing << "," << (k + 1) << "," << format_number(c.eigenvalues[k]) << "," << c.rx << ","
                    << hash << "," << cfg.seed << "\n";
        return out.str();
    }

    RunOutput run_eig_spectrum(const ExperimentConfig &cfg)
    {
        RunOutput out;
        out.csv = cfg.output_dir / "eig_spectrum.csv";
        out.svg = cfg.output_dir / "eig_spectrum.svg";
        write_text(out.csv, eig_spectrum_csv(compute_eig_spectrum(cfg), cfg));
        render_csv_plot(out.csv, out.svg,
                        {"Receive correlation eigenvalues", "index", "eigenvalue", {"spacing", "rx"},
                         "eigenvalue index", "eigenvalue"});
        return out;
    }

    SeTable compute_se_sweep(const ExperimentConfig &cfg, int threads)
    {
        cfg.validate();
        SeTable table;
        const auto opt = cfg.monte_carlo_options(threads);
        for (const auto &set : cfg.parameter_sets())
        {
            const auto link = make_link(set.tx, set.rx, set.users);
            for (Scheme s : cfg.schemes)
            {
                if (s != Scheme::mrt && !zf_feasible(link))
                {
                    table.warnings.push_back(infeasible_note(s, set, link));
                    continue;
                }
                append_mc(table, monte_carlo_se(link, s, cfg.snr_grid_db, opt), set);
            }
        }
        return table;
    }

    SeTable compute_theory_vs_sim(const ExperimentConfig &cfg, int threads)
    {
        cfg.validate();
        SeTable table;
        const auto opt = cfg.monte_carlo_options(threads);
        for (const auto &set : cfg.parameter_sets())
        {
            const auto link = make_link(set.tx, set.rx, set.users);
            if (!zf_feasible(link))
            {
                table.warnings.push_back(infeasible_note(Scheme::zf, set, link) + " (theory and MMSE skipped too)");
                continue;
            }
            const auto zf = monte_carlo_se(link, Scheme::zf, cfg.snr_grid_db, opt);
            const auto mmse = monte_carlo_se(link, Scheme::mmse, cfg.snr_grid_db, opt);
            append_mc(table, zf, set);
            for (std::size_t s = 0; s < cfg.snr_grid_db.size(); ++s)
            {
                const double p_u = db_to_linear(cfg.snr_grid_db[s]) * opt.noise_var;
                const auto th = theoretical_zf_rate(link.variance, link.tx_harmonics(), link.streams(), p_u,
                                                    opt.noise_var, cfg.normalization);
                SeRow row;
                row.scheme = "zf-theory";
                row.snr_db = cfg.snr_grid_db[s];
                row.sum_rate = th.sum_rate;
                row.tx = set.tx_label();
                row.rx = set.rx_label();
                row.users = set.users;
                row.rel_gap = std::abs(th.sum_rate - zf[s].sum_rate) / zf[s].sum_rate;
                table.rows.push_back(std::move(row));
            }
            append_mc(table, mmse, set);
        }
        return table;
    }

    std::string se_csv(const SeTable &table, const ExperimentConfig &cfg, bool with_gap)
    {
        const auto hash = cfg.hash();
        std::ostringstream out;
        out << "scheme,snr_db,sum_rate,std_error,n_trials,config_hash,seed,tx,rx,users";
        if (with_gap)
            out << ",rel_gap";
        out << "\n";
        for (const auto &r : table.rows)
        {
            out << r.scheme << "," << format_number(r.snr_db) << "," << format_number(r.sum_rate) << ","
                << format_number(r.std_error) << "," << r.n_trials << "," << hash << "," << cfg.seed << "," << r.tx
                << "," << r.rx << "," << r.users;
            if (with_gap)
                out << "," << (r.rel_gap >= 0.0 ? format_number(r.rel_gap) : std::string());
            out << "\n";
        }
        return out.str();
    }

    RunOutput run_se_sweep(const ExperimentConfig &cfg, int threads)
    {
        RunOutput out;
        out.csv = cfg.output_dir / "se_sweep.csv";
        out.svg = cfg.output_dir / "se_sweep.svg";
        auto table = compute_se_sweep(cfg, threads);
        write_text(out.csv, se_csv(table, cfg, false));
        render_csv_plot(out.csv, out.svg, se_plot);
        out.warnings = std::move(table.warnings);
        return out;
    }

    RunOutput run_theory_vs_sim(const ExperimentConfig &cfg, int threads)
    {
        RunOutput out;
        out.csv = cfg.output_dir / "theory_vs_sim.csv";
        out.svg = cfg.output_dir / "theory_vs_sim.svg";
        auto table = compute_theory_vs_sim(cfg, threads);
        write_text(out.csv, se_csv(table, cfg, true));
        auto spec = se_plot;
        spec.title = "ZF: simulation vs. theory (MMSE benchmark)";
        render_csv_plot(out.csv, out.svg, spec);
        out.warnings = std::move(table.warnings);
        return out;
    }

    RunOutput run_channel_dump(const ExperimentConfig &cfg, std::size_t count, int threads)
    {
        cfg.validate();
        const auto sets = cfg.parameter_sets();
        if (sets.size() != 1)
            throw ConfigError("channel-dump needs exactly one parameter set (no sweeps), got " +
                              std::to_string(sets.size()));
        if (count < 1)
            throw ConfigError("channel-dump count must be >= 1");

        const auto link = make_link(sets.front().tx, sets.front().rx, sets.front().users);
        std::vector<ChannelRealization> reals(count);
        const auto n = std::ptrdiff_t(count);
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads())
        for (std::ptrdiff_t t = 0; t < n; ++t)
            reals[std::size_t(t)] = assemble_multiuser_channel(link, cfg.seed, std::uint64_t(t));

        RunOutput out;
        const auto path = cfg.output_dir / "channels.hch";
        std::error_code ec;
        std::filesystem::create_directories(cfg.output_dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
        write_channel_dump(path, make_dump_header(link, cfg.seed, count), reals);
        out.dump = path;
        return out;
    }
}
