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

// Acceptance gate. Prints one PASS/FAIL line per criterion; exits nonzero if any selected criterion fails.
//   hmimo_acceptance                 run all criteria
//   hmimo_acceptance --criterion N   run criterion N only

#include "hmimo/experiment.hpp"
#include "hmimo/rate.hpp"
#include "hmimo/summation.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace hmimo;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::ostringstream detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail << " [violated: " << what << "]";
            }
        }
    };

    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0)
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    std::string read_file(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    // ---- 1 -----------------------------------------------------------------------------------------
    constexpr double c1_tolerance = 1e-10;
    constexpr double c1_runtime_s = 10.0;

    void basis_correctness(Outcome &out)
    {
        const auto t0 = Clock::now();
        std::mt19937_64 eng(1001);
        std::uniform_real_distribution<double> spacing(1.0 / 8.0, 0.5);
        double worst = 0.0;
        for (int g = 0; g < 10; ++g)
        {
            const int nh = std::uniform_int_distribution<int>(1, 16)(eng);
            const int nv = std::uniform_int_distribution<int>(1, 256 / nh)(eng);
            const ArrayGeometry geom{nh, nv, spacing(eng)};
            const auto b = build_harmonic_matrix(geom, LinkSide::transmit);
            const CMatrix gram = b.harmonics.adjoint() * b.harmonics;
            const double err = (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
            worst = std::max(worst, err);
            out.detail << " " << nh << "x" << nv << "@" << geom.spacing;
        }
        const double elapsed = seconds_since(t0);
        out.detail << "; max |U^H U - I| = " << worst << ", " << elapsed << " s";
        out.require(worst < c1_tolerance, "max |U^H U - I| < 1e-10");
        out.require(elapsed < c1_runtime_s, "runtime < 10 s");
    }

    // ---- 2 -----------------------------------------------------------------------------------------
    std::vector<WavenumberIndex> exhaustive_scan(double lx, double ly)
    {
        std::vector<WavenumberIndex> pts;
        const int rx = int(lx) + 2, ry = int(ly) + 2;
        for (int x = -rx; x <= rx; ++x)
            for (int y = -ry; y <= ry; ++y)
                if ((double(x) / lx) * (double(x) / lx) + (double(y) / ly) * (double(y) / ly) <= 1.0 + 1e-12)
                    pts.push_back({x, y});
        return pts;
    }

    void lattice_counts(Outcome &out)
    {
        std::mt19937_64 eng(2002);
        std::uniform_int_distribution<int> count(1, 40);
        std::uniform_real_distribution<double> spacing(0.1, 0.6);
        int matched = 0;
        for (int a = 0; a < 20; ++a)
        {
            const ArrayGeometry g{count(eng), count(eng), spacing(eng)};
            matched += enumerate_lattice_ellipse(g) == exhaustive_scan(g.aperture_x(), g.aperture_y());
        }
        const auto c1 = enumerate_lattice_ellipse({1, 1, 0.5}).size();
        const auto c13 = enumerate_lattice_ellipse({4, 4, 0.5}).size();
        const auto c317 = enumerate_lattice_ellipse({20, 20, 0.5}).size();
        out.detail << " random apertures matching oracle " << matched << "/20; L=0.5 -> " << c1 << ", L=2 -> " << c13
                   << ", L=10 -> " << c317;
        out.require(matched == 20, "all 20 random apertures match the exhaustive scan");
        out.require(c1 == 1 && c13 == 13 && c317 == 317, "counts 1, 13, 317");
    }

    // ---- 3 -----------------------------------------------------------------------------------------
    constexpr std::size_t c3_samples = 10'000'000;
    constexpr double c3_max_z = 3.0;
    constexpr double c3_sum_tolerance = 1e-9;

    void variance_integration(Outcome &out)
    {
        // Rejection sampling of isotropic directions: uniform points in the box [-1,1]² × [0,1], kept when
        // inside the unit half-ball, then projected radially onto the hemisphere and into the k_x/k_y plane.
        const ArrayGeometry geom{4, 4, 0.5}; // L = 2
        const double l = geom.aperture_x();
        std::mt19937_64 eng(3003);
        std::uniform_real_distribution<double> sym(-1.0, 1.0), up(0.0, 1.0);
        std::map<WavenumberIndex, std::size_t> hits;
        std::size_t accepted = 0, proposed = 0;
        while (accepted < c3_samples)
        {
            ++proposed;
            const double x = sym(eng), y = sym(eng), z = up(eng);
            const double r = std::sqrt(x * x + y * y + z * z);
            if (r > 1.0 || r < 1e-9)
                continue;
            ++accepted;
            const int mx = int(std::floor(x / r * l + 0.5));
            const int my = int(std::floor(y / r * l + 0.5));
            ++hits[{mx, my}];
        }

        const auto basis = build_harmonic_matrix(geom, LinkSide::transmit);
        double worst_z = 0.0;
        for (auto idx : basis.indices)
        {
            const double v = cell_variance(idx, l, l);
            const double p = double(hits[idx]) / double(accepted);
            const double se = std::sqrt(v * (1.0 - v) / double(accepted));
            worst_z = std::max(worst_z, std::abs(p - v) / se);
        }
        const auto sv = build_spectral_variance(basis, build_harmonic_matrix(geom, LinkSide::receive));
        const double tx_sum = sv.tx_var.sum(), rx_sum = sv.rx_var.sum();

        out.detail << " " << basis.size() << " cells, " << accepted << " accepted of " << proposed
                   << " proposals; worst |MC - quadrature| = " << worst_z << " SE; tx sum - 1 = " << tx_sum - 1.0
                   << ", rx sum - 1 = " << rx_sum - 1.0;
        out.require(worst_z <= c3_max_z, "every cell within 3 standard errors");
        out.require(std::abs(tx_sum - 1.0) <= c3_sum_tolerance && std::abs(rx_sum - 1.0) <= c3_sum_tolerance,
                    "per-side sums = 1 +- 1e-9");
    }

    // ---- 4 -----------------------------------------------------------------------------------------
    constexpr std::size_t c4_trials = 800;
    constexpr double c4_lo = 0.95, c4_hi = 1.05;

    // Desk scale shared by criteria 4 and 7: N_s = 100 and N_r = 16 at λ/6
    const ArrayGeometry desk_tx{10, 10, 1.0 / 6.0};
    const ArrayGeometry desk_rx16{4, 4, 1.0 / 6.0};
    const ArrayGeometry desk_rx36{6, 6, 1.0 / 6.0};
    constexpr int desk_users = 3;

    void channel_statistics(Outcome &out)
    {
        const auto link = make_link(desk_tx, desk_rx16, desk_users);
        const double scale = double(desk_users) * double(desk_rx16.element_count() * desk_tx.element_count());
        const auto bound = Eigen::Index(std::min(link.streams(), link.tx_harmonics()));
        MeanAccumulator power;
        std::size_t rank_violations = 0;
        Eigen::Index max_rank = 0;
        for (std::uint64_t t = 0; t < c4_trials; ++t)
        {
            const auto r = assemble_multiuser_channel(link, 4004, t);
            power.add(r.stacked_space.squaredNorm() / scale);
            const auto rank = numerical_rank(r.stacked_space);
            max_rank = std::max(max_rank, rank);
            rank_violations += rank > bound;
        }
        out.detail << " N_s=100 N_r=16 M=3 at 1/6 (n_s=" << link.tx_harmonics() << ", n_r=" << link.rx[0].size()
                   << "); mean |H|_F^2/(M N_r N_s) = " << power.mean() << " +- " << power.std_error()
                   << "; max rank " << max_rank << " vs bound " << bound << ", violations " << rank_violations;
        out.require(power.mean() >= c4_lo && power.mean() <= c4_hi, "mean normalized power in [0.95, 1.05]");
        out.require(rank_violations == 0, "rank(H) <= min(M n_r, n_s) on every trial");
    }

    // ---- 5 -----------------------------------------------------------------------------------------
    constexpr std::size_t c5_realizations = 100;
    constexpr double c5_offdiag = 1e-10;
    constexpr double c5_trace = 1e-9;
    constexpr double c5_snr_db = 10.0;

    // K = 15 streams over n_s = 21 harmonics
    MultiUserLink loaded_link()
    {
        return make_link({10, 10, 0.25}, {4, 4, 0.25}, 3);
    }

    void nulling_and_power(Outcome &out)
    {
        const auto link = loaded_link();
        const auto n = Eigen::Index(link.tx.element_count());
        const double p = db_to_linear(c5_snr_db);
        double worst_off = 0.0, worst_trace = 0.0;
        for (std::uint64_t t = 0; t < c5_realizations; ++t)
        {
            const auto r = assemble_multiuser_channel(link, 5005, t, SpaceDomain::skip);
            const auto ch = effective_channel(r, link.tx, unit_phase(n));
            for (auto s : {Scheme::mrt, Scheme::zf, Scheme::mmse})
            {
                const auto v = make_precoder(s, ch, p, 1.0);
                worst_trace = std::max(worst_trace, std::abs((v.matrix * v.matrix.adjoint()).trace().real() - 1.0));
                if (s == Scheme::zf)
                {
                    CMatrix e = ch.matrix * v.matrix;
                    e.diagonal().setZero();
                    worst_off = std::max(worst_off, e.cwiseAbs().maxCoeff());
                }
            }
        }
        out.detail << " K=" << link.streams() << " n_s=" << link.tx_harmonics() << ", " << c5_realizations
                   << " realizations; max ZF off-diagonal " << worst_off << "; max |tr(VV^H) - 1| " << worst_trace;
        out.require(worst_off < c5_offdiag, "ZF off-diagonal < 1e-10");
        out.require(worst_trace <= c5_trace, "trace(VV^H) = 1 +- 1e-9 for MRT, ZF, MMSE");
    }

    // ---- 6 -----------------------------------------------------------------------------------------
    constexpr int c6_phases = 10;
    constexpr std::size_t c6_realizations = 20;
    constexpr double c6_tolerance = 1e-9;

    void phase_invariance(Outcome &out)
    {
        const auto link = loaded_link();
        const auto n = Eigen::Index(link.tx.element_count());
        double worst = 0.0;
        for (std::uint64_t t = 0; t < c6_realizations; ++t)
        {
            const auto r = assemble_multiuser_channel(link, 6006, t, SpaceDomain::skip);
            const auto base = effective_channel(r, link.tx, unit_phase(n));
            const RMatrix ref = per_stream_rate(base, zf_precoder(base), 10.0, 1.0);
            for (int k = 0; k < c6_phases; ++k)
            {
                const auto ch = effective_channel(r, link.tx, random_phase(n, 6006 + std::uint64_t(k), t));
                const RMatrix rate = per_stream_rate(ch, zf_precoder(ch), 10.0, 1.0);
                worst = std::max(worst, ((rate - ref).array().abs() / ref.array()).maxCoeff());
            }
        }
        out.detail << " " << c6_realizations << " realizations x " << c6_phases
                   << " phase vectors; max relative ZF rate change " << worst;
        out.require(worst <= c6_tolerance, "relative change <= 1e-9");
    }

    // ---- 7 -----------------------------------------------------------------------------------------
    constexpr std::size_t c7_trials = 800;
    constexpr double c7_runtime_s = 300.0;
    constexpr double c7_se_multiple = 2.0;

    void precoder_ordering(Outcome &out)
    {
        const auto t0 = Clock::now();
        const std::vector<double> snr{-10, -5, 0, 5, 10, 15, 20, 25, 30};
        const auto at = [&](double db)
        { return std::size_t(std::find(snr.begin(), snr.end(), db) - snr.begin()); };
        MonteCarloOptions opt;
        opt.n_trials = c7_trials;
        opt.seed = 7007;

        for (const auto &rx : {desk_rx16, desk_rx36})
        {
            const auto link = make_link(desk_tx, rx, desk_users);
            out.detail << " N_r=" << rx.element_count() << " (K=" << link.streams() << ", n_s="
                       << link.tx_harmonics() << "):";
            if (!zf_feasible(link))
            {
                out.detail << " ZF/MMSE infeasible;";
                out.require(false, "N_r=" + std::to_string(rx.element_count()) + " needs K <= n_s for ZF");
                continue;
            }
            const auto mrt = monte_carlo_se(link, Scheme::mrt, snr, opt);
            const auto zf = monte_carlo_se(link, Scheme::zf, snr, opt);
            const auto mmse = monte_carlo_se(link, Scheme::mmse, snr, opt);
            const auto lo = at(-10), hi = at(20), mid = at(0);
            out.detail << " -10 dB MRT " << mrt[lo].sum_rate << " ZF " << zf[lo].sum_rate << "; 20 dB MRT "
                       << mrt[hi].sum_rate << " ZF " << zf[hi].sum_rate << ";";
            const auto tag = " (N_r=" + std::to_string(rx.element_count()) + ")";
            out.require(mrt[lo].sum_rate > zf[lo].sum_rate, "MRT > ZF at -10 dB" + tag);
            out.require(zf[hi].sum_rate > mrt[hi].sum_rate, "ZF > MRT at 20 dB" + tag);
            bool mmse_best = true;
            for (std::size_t s = 0; s < snr.size(); ++s)
            {
                const double best = std::max(mrt[s].sum_rate, zf[s].sum_rate);
                const double se = std::max({mrt[s].std_error, zf[s].std_error, mmse[s].std_error});
                mmse_best = mmse_best && mmse[s].sum_rate >= best - c7_se_multiple * se;
            }
            out.require(mmse_best, "MMSE >= max(MRT, ZF) - 2 SE everywhere" + tag);
            const double gap20 = mmse[hi].sum_rate - zf[hi].sum_rate, gap0 = mmse[mid].sum_rate - zf[mid].sum_rate;
            out.detail << " MMSE-ZF gap 0 dB " << gap0 << ", 20 dB " << gap20 << ";";
            out.require(gap20 < gap0, "ZF->MMSE gap smaller at 20 dB than at 0 dB" + tag);
        }
        const double elapsed = seconds_since(t0);
        out.detail << " " << elapsed << " s";
        out.require(elapsed < c7_runtime_s, "runtime < 5 min");
    }

    // ---- 8 -----------------------------------------------------------------------------------------
    constexpr std::size_t c8_trials = 800;
    constexpr double c8_low_snr_gap = 0.10;
    constexpr double c8_high_snr_gap = 0.25;

    void theory_vs_simulation(Outcome &out)
    {
        const auto link = make_link({10, 10, 0.5}, {2, 2, 0.5}, 3);
        const std::vector<double> snr{-10, -5, 0, 5, 10, 15, 20};
        MonteCarloOptions opt;
        opt.n_trials = c8_trials;
        opt.seed = 8008;
        out.detail << " n_s=" << link.tx_harmonics() << " n_r=" << link.rx[0].size() << " K=" << link.streams()
                   << "; relative gap:";
        out.require(link.tx_harmonics() == 81 && link.rx[0].size() == 5, "n_s = 81 and n_r = 5");
        const auto zf = monte_carlo_se(link, Scheme::zf, snr, opt);
        for (std::size_t s = 0; s < snr.size(); ++s)
        {
            const auto th = theoretical_zf_rate(link.variance, link.tx_harmonics(), link.streams(),
                                                db_to_linear(snr[s]));
            const double gap = std::abs(th.sum_rate - zf[s].sum_rate) / zf[s].sum_rate;
            out.detail << " " << snr[s] << " dB " << gap;
            const double limit = snr[s] <= 0.0 ? c8_low_snr_gap : c8_high_snr_gap;
            out.require(gap <= limit, "gap at " + format_number(snr[s]) + " dB <= " + format_number(limit));
        }
    }

    // ---- 9 -----------------------------------------------------------------------------------------
    constexpr std::size_t c9_trials = 10'000;
    constexpr double c9_tolerance = 0.05;

    void expected_beta(Outcome &out)
    {
        // Uniform spectrum, n_s = 81, n_r = 5, K = 15, on N_s = 400 and N_r = 16 elements
        constexpr Eigen::Index n_s = 81, n_r = 5;
        constexpr std::size_t N_s = 400, N_r = 16, K = 15;
        SpectralVariance sv;
        sv.tx_var = RVector::Constant(n_s, 1.0 / double(n_s));
        sv.rx_var = RVector::Constant(n_r, 1.0 / double(n_r));
        sv.tx_elements = N_s;
        sv.rx_elements = N_r;
        sv.sigma_matrix = RMatrix::Constant(n_r, n_s, std::sqrt(double(N_r * N_s) / double(n_r * n_s)));
        const auto c = expected_beta_check(sv, K, c9_trials, 9009);
        out.detail << " empirical E{beta_1} = " << c.empirical_mean << " +- " << c.std_error << ", closed form "
                   << c.closed_form << ", relative deviation " << c.relative_deviation;
        out.require(c.relative_deviation <= c9_tolerance, "relative deviation <= 5%");
    }

    // ---- 10 ----------------------------------------------------------------------------------------
    constexpr double c10_threshold = 0.01;
    constexpr double c10_flat_distance = 0.1;

    void correlation_spectrum(Outcome &out)
    {
        const auto tx = build_harmonic_matrix({10, 10, 1.0 / 3.0}, LinkSide::transmit);
        std::vector<long> counts;
        bool all_differ_from_iid = true;
        for (double d : {1.0 / 6.0, 1.0 / 3.0, 0.5})
        {
            const auto rx = build_harmonic_matrix({8, 8, d}, LinkSide::receive);
            const auto spec = receive_correlation_spectrum(build_spectral_variance(tx, rx), rx);
            const double cut = c10_threshold * spec.eigenvalues.maxCoeff();
            counts.push_back(long((spec.eigenvalues.array() > cut).count()));
            const double flat = (spec.eigenvalues.array() - 1.0).abs().maxCoeff();
            all_differ_from_iid = all_differ_from_iid && flat > c10_flat_distance;
            out.detail << " 1/" << std::lround(1.0 / d) << ": " << counts.back() << " above 1% of max, max |lambda - 1| "
                       << flat << ";";
        }
        out.require(counts[0] < counts[1] && counts[1] < counts[2], "counts strictly increase with spacing");
        out.require(all_differ_from_iid, "every curve departs from the flat i.i.d. reference");
    }

    // ---- 11 ----------------------------------------------------------------------------------------
    void determinism(Outcome &out)
    {
        auto cfg = parse_config("tx.shape = 10x10\ntx.spacing_lambda = 1/4\nrx.shape = 4x4\n"
                                "rx.spacing_lambda = 1/4\nusers = 3\ntrials = 64\nseed = 11011\n");
        const auto root = std::filesystem::temp_directory_path() / "hmimo_acceptance_determinism";
        std::filesystem::remove_all(root);
        std::map<std::string, std::string> first;
        bool identical = true;
        std::size_t compared = 0;
        for (int threads : {1, 4, 1, 3})
        {
            cfg.output_dir = root / std::to_string(compared);
            const std::array<std::filesystem::path, 4> files{run_se_sweep(cfg, threads).csv,
                                                             run_theory_vs_sim(cfg, threads).csv,
                                                             run_eig_spectrum(cfg).csv,
                                                             run_channel_dump(cfg, 4, threads).dump};
            for (const auto &f : files)
            {
                const auto text = read_file(f);
                const auto name = f.filename().string();
                if (!first.count(name))
                    first[name] = text;
                else
                    identical = identical && first[name] == text;
            }
            ++compared;
        }
        out.detail << " se_sweep, theory_vs_sim, eig_spectrum CSV and channel dump over thread counts 1, 4, 1, 3: "
                   << (identical ? "byte-identical" : "DIFFER");
        out.require(identical, "bit-identical outputs");
    }

    struct Criterion
    {
        const char *title;
        std::function<void(Outcome &)> run;
    };

    const std::vector<Criterion> &criteria()
    {
        static const std::vector<Criterion> list{
            {"basis correctness", basis_correctness},
            {"lattice counts", lattice_counts},
            {"variance integration", variance_integration},
            {"channel statistics", channel_statistics},
            {"ZF nulling and power", nulling_and_power},
            {"phase invariance", phase_invariance},
            {"precoder ordering", precoder_ordering},
            {"theory vs simulation", theory_vs_simulation},
            {"expected beta", expected_beta},
            {"correlation spectrum", correlation_spectrum},
            {"determinism", determinism},
        };
        return list;
    }
}

int main(int argc, char **argv)
{
    int only = 0;
    for (int a = 1; a < argc; ++a)
    {
        if (std::strcmp(argv[a], "--criterion") == 0 && a + 1 < argc)
            only = std::atoi(argv[++a]);
        else
        {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    const auto &list = criteria();
    if (only < 0 || only > int(list.size()))
    {
        std::fprintf(stderr, "criterion must be in 1..%zu\n", list.size());
        return 2;
    }

    int failed = 0;
    for (std::size_t k = 0; k < list.size(); ++k)
    {
        if (only && int(k) + 1 != only)
            continue;
        Outcome out;
        try
        {
            list[k].run(out);
        }
        catch (const std::exception &e)
        {
            out.pass = false;
            out.detail << " [exception: " << e.what() << "]";
        }
        std::printf("%s criterion %zu (%s):%s\n", out.pass ? "PASS" : "FAIL", k + 1, list[k].title,
                    out.detail.str().c_str());
        std::fflush(stdout);
        failed += !out.pass;
    }
    return failed ? 1 : 0;
}
