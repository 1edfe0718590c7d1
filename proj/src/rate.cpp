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

#include "hmimo/rate.hpp"
#include "hmimo/summation.hpp"

#include <omp.h>

#include <cmath>
#include <sstream>

namespace hmimo
{
    namespace
    {
        int thread_count(int requested)
        {
            return requested > 0 ? requested : omp_get_max_threads();
        }

        std::size_t streams_per_user(const MultiUserLink &link)
        {
            const std::size_t n_r = link.rx.front().size();
            for (const auto &b : link.rx)
                if (b.size() != n_r)
                    throw ConfigError("all users must have the same number of receive harmonics");
            return n_r;
        }
    }

    RMatrix per_stream_sinr(const EffectiveChannel &ch, const Precoder &v, double p_u, double noise_var)
    {
        if (v.matrix.rows() != ch.matrix.cols() || v.matrix.cols() != ch.matrix.rows())
            throw ConfigError("precoder dimensions do not match the effective channel");
        const CMatrix gains = ch.matrix * v.matrix;
        const auto k = gains.rows();
        const auto n_r = ch.streams_per_user();

        RMatrix out(Eigen::Index(ch.users), n_r);
        for (Eigen::Index i = 0; i < k; ++i)
        {
            const double signal = std::norm(gains(i, i));
            double interference = 0.0;
            for (Eigen::Index j = 0; j < k; ++j)
                if (j != i)
                    interference += std::norm(gains(i, j));
            out(i / n_r, i % n_r) = p_u * signal / (p_u * interference + noise_var);
        }
        return out;
    }

    RMatrix per_stream_rate(const EffectiveChannel &ch, const Precoder &v, double p_u, double noise_var)
    {
        return per_stream_sinr(ch, v, p_u, noise_var).unaryExpr([](double s)
                                                                 { return std::log2(1.0 + s); });
    }

    bool zf_feasible(const MultiUserLink &link) noexcept
    {
        return link.streams() <= link.tx_harmonics() && link.streams() <= link.tx.element_count();
    }

    void check_feasible(const MultiUserLink &link, Scheme scheme)
    {
        if (link.users() == 0)
            throw ConfigError("link has no users");
        streams_per_user(link);
        if (scheme != Scheme::mrt && !zf_feasible(link))
        {
            std::ostringstream msg;
            msg << to_string(scheme) << " is infeasible: K = " << link.streams() << " streams exceed n_s = "
                << link.tx_harmonics() << " transmit harmonics";
            throw ConfigError(msg.str());
        }
    }

    std::vector<RVector> evaluate_trial(const MultiUserLink &link, Scheme scheme, std::span<const double> snr_db,
                                        const MonteCarloOptions &opt, std::uint64_t trial)
    {
        const auto realization = assemble_multiuser_channel(link, opt.seed, trial, SpaceDomain::skip);
        const auto n_el = Eigen::Index(link.tx.element_count());
        const CVector phase = opt.phase == PhaseMode::ones ? unit_phase(n_el) : random_phase(n_el, opt.seed, trial);
        const auto ch = effective_channel(realization, link.tx, phase);

        auto flatten = [](const RMatrix &m)
        {
            RVector v(m.size());
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    v[i * m.cols() + j] = m(i, j);
            return v;
        };

        std::vector<RVector> out;
        out.reserve(snr_db.size());
        if (scheme == Scheme::mmse)
        {
            for (double db : snr_db)
            {
                const double p_u = db_to_linear(db) * opt.noise_var;
                const auto v = mmse_precoder(ch, p_u, opt.noise_var, opt.normalization);
                out.push_back(flatten(per_stream_rate(ch, v, p_u, opt.noise_var)));
            }
        }
        else
        {
            const auto v = make_precoder(scheme, ch, 1.0, opt.noise_var, opt.normalization);
            for (double db : snr_db)
            {
                const double p_u = db_to_linear(db) * opt.noise_var;
                out.push_back(flatten(per_stream_rate(ch, v, p_u, opt.noise_var)));
            }
        }
        return out;
    }

    std::vector<SeResult> reduce_trials(const std::vector<std::vector<RVector>> &trials, const MultiUserLink &link,
                                        Scheme scheme, std::span<const double> snr_db)
    {
        const auto users = Eigen::Index(link.users());
        const auto n_r = Eigen::Index(streams_per_user(link));
        std::vector<SeResult> out;
        out.reserve(snr_db.size());
        for (std::size_t s = 0; s < snr_db.size(); ++s)
        {
            std::vector<CompensatedSum> stream_sums(std::size_t(users * n_r));
            MeanAccumulator sum_rate;
            for (const auto &trial : trials)
            {
                const RVector &r = trial[s];
                CompensatedSum total;
                for (Eigen::Index k = 0; k < r.size(); ++k)
                {
                    stream_sums[std::size_t(k)].add(r[k]);
                    total.add(r[k]);
                }
                sum_rate.add(total.value());
            }

            SeResult res;
            res.per_stream_rate.resize(users, n_r);
            for (Eigen::Index k = 0; k < users * n_r; ++k)
                res.per_stream_rate(k / n_r, k % n_r) = stream_sums[std::size_t(k)].value() / double(trials.size());
            // Sum of the reported per-stream means, so the two views agree exactly up to rounding
            CompensatedSum reported;
            for (Eigen::Index k = 0; k < users * n_r; ++k)
                reported.add(res.per_stream_rate(k / n_r, k % n_r));
            res.sum_rate = reported.value();
            res.snr_db = snr_db[s];
            res.scheme = scheme;
            res.n_trials = trials.size();
            res.std_error = sum_rate.std_error();
            out.push_back(std::move(res));
        }
        return out;
    }

    std::vector<SeResult> monte_carlo_se(const MultiUserLink &link, Scheme scheme, std::span<const double> snr_db,
                                         const MonteCarloOptions &opt)
    {
        check_feasible(link, scheme);
        if (opt.n_trials < 1)
            throw ConfigError("n_trials must be >= 1");

        const auto n = std::ptrdiff_t(opt.n_trials);
        std::vector<std::vector<RVector>> trials(opt.n_trials);
        std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic) num_threads(thread_count(opt.threads))
        for (std::ptrdiff_t t = 0; t < n; ++t)
        {
            try
            {
                trials[std::size_t(t)] = evaluate_trial(link, scheme, snr_db, opt, std::uint64_t(t));
            }
            catch (...)
            {
#pragma omp critical(hmimo_mc_failure)
                if (!failure)
                    failure = std::current_exception();
            }
        }
        if (failure)
            std::rethrow_exception(failure);
        return reduce_trials(trials, link, scheme, snr_db);
    }

    RVector zf_beta(const CMatrix &stacked_wavenumber)
    {
        const auto k = stacked_wavenumber.rows();
        const CMatrix gram = stacked_wavenumber * stacked_wavenumber.adjoint();
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
        const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
        if (!(lo > 0.0) || hi / lo > max_gram_condition)
        {
            std::ostringstream msg;
            msg << "Gram matrix H_a H_a^H of dimension K = " << k << " is singular";
            throw SingularError(msg.str());
        }
        const CMatrix inv = gram.llt().solve(CMatrix::Identity(k, k));
        RVector beta(k);
        for (Eigen::Index i = 0; i < k; ++i)
            beta[i] = 1.0 / inv(i, i).real();
        return beta;
    }

    TheoreticalZfRate theoretical_zf_rate(const std::vector<SpectralVariance> &per_user, std::size_t n_s,
                                          std::size_t streams, double p_u, double noise_var, PowerNormalization norm)
    {
        if (per_user.empty())
            throw ConfigError("theoretical ZF rate needs at least one user");
        const auto n_r = per_user.front().rx_var.size();
        for (const auto &sv : per_user)
            if (sv.rx_var.size() != n_r || std::size_t(sv.tx_var.size()) != n_s)
                throw ConfigError("per-user variances disagree with n_s or with each other");

        // per_user reproduces the single-user block formula: n_r in both the power split and (n_s − n_r + 1)
        const std::size_t load = norm == PowerNormalization::total_streams ? streams : std::size_t(n_r);
        if (n_s < streams)
        {
            std::ostringstream msg;
            msg << "theoretical ZF rate is infeasible: n_s = " << n_s << " < " << streams << " streams";
            throw ConfigError(msg.str());
        }
        if (!(noise_var > 0.0) || p_u < 0.0)
            throw DomainError("theoretical ZF rate needs p_u >= 0 and positive noise variance");

        TheoreticalZfRate out;
        out.n_s = n_s;
        out.streams = streams;
        out.p_u = p_u;
        out.noise_var = noise_var;
        out.avg_tx_var = average_tx_variance(per_user.front());
        out.per_stream_rate.resize(Eigen::Index(per_user.size()), n_r);

        const double dof = double(n_s - load + 1);
        CompensatedSum total;
        for (std::size_t m = 0; m < per_user.size(); ++m)
        {
            const auto &sv = per_user[m];
            const double gain = double(sv.rx_elements) * double(sv.tx_elements);
            const double sigma_s = average_tx_variance(sv);
            for (Eigen::Index i = 0; i < n_r; ++i)
            {
                const double beta = dof * gain * sv.rx_var[i] * sigma_s;
                const double r = std::log2(1.0 + p_u / (double(load) * noise_var) * beta);
                out.per_stream_rate(Eigen::Index(m), i) = r;
                total.add(r);
            }
        }
        out.sum_rate = total.value();
        return out;
    }

    BetaCheck expected_beta_check(const SpectralVariance &sv, std::size_t streams, std::size_t n_trials,
                                  std::uint64_t seed, int threads)
    {
        const auto n_s = std::size_t(sv.tx_var.size());
        const auto n_r = sv.sigma_matrix.rows();
        if (streams < 1 || streams > n_s)
            throw ConfigError("expected_beta_check needs 1 <= K <= n_s");
        if (n_trials < 1)
            throw ConfigError("expected_beta_check needs at least one trial");

        RMatrix sigma(static_cast<Eigen::Index>(streams), static_cast<Eigen::Index>(n_s));
        for (Eigen::Index k = 0; k < Eigen::Index(streams); ++k)
            sigma.row(k) = sv.sigma_matrix.row(k % n_r);

        std::vector<double> beta1(n_trials);
        const auto n = std::ptrdiff_t(n_trials);
#pragma omp parallel for schedule(static) num_threads(thread_count(threads))
        for (std::ptrdiff_t t = 0; t < n; ++t)
        {
            auto engine = rng::substream(seed, std::uint64_t(t), rng::StreamTag::beta_check);
            rng::ComplexNormal cn;
            CMatrix h(sigma.rows(), sigma.cols());
            for (Eigen::Index i = 0; i < h.rows(); ++i)
                for (Eigen::Index j = 0; j < h.cols(); ++j)
                    h(i, j) = sigma(i, j) * cn(engine);
            const CMatrix gram = h * h.adjoint();
            const CMatrix inv = gram.llt().solve(CMatrix::Identity(h.rows(), h.rows()));
            beta1[std::size_t(t)] = 1.0 / inv(0, 0).real();
        }

        MeanAccumulator acc;
        for (double b : beta1)
            acc.add(b);

        BetaCheck out;
        out.n_trials = n_trials;
        out.empirical_mean = acc.mean();
        out.std_error = acc.std_error();
        const double gain = double(sv.rx_elements) * double(sv.tx_elements);
        out.closed_form = double(n_s - streams + 1) * gain * sv.rx_var[0] * average_tx_variance(sv);
        out.relative_deviation = std::abs(out.empirical_mean - out.closed_form) / out.closed_form;
        return out;
    }
}
