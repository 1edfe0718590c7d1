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

#include "hmimo/channel.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hmimo
{
    std::size_t MultiUserLink::streams() const noexcept
    {
        std::size_t k = 0;
        for (const auto &b : rx)
            k += b.size();
        return k;
    }

    std::size_t MultiUserLink::rx_elements_total() const noexcept
    {
        std::size_t n = 0;
        for (const auto &b : rx)
            n += b.element_count();
        return n;
    }

    MultiUserLink make_link(const ArrayGeometry &tx, const ArrayGeometry &rx, int users)
    {
        if (users < 1)
            throw ConfigError("number of users must be >= 1");
        MultiUserLink link;
        link.tx = build_harmonic_matrix(tx, LinkSide::transmit);
        const auto rx_basis = build_harmonic_matrix(rx, LinkSide::receive);
        // Isotropic scattering: every user sees the same spectrum; stored per user anyway
        const auto sv = build_spectral_variance(link.tx, rx_basis);
        link.rx.assign(std::size_t(users), rx_basis);
        link.variance.assign(std::size_t(users), sv);
        return link;
    }

    CMatrix sample_wavenumber_channel(const SpectralVariance &sv, rng::Engine &engine)
    {
        rng::ComplexNormal cn;
        const auto rows = sv.sigma_matrix.rows(), cols = sv.sigma_matrix.cols();
        CMatrix h(rows, cols);
        // Row-major draw order so the stream layout does not depend on Eigen's storage order
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                h(i, j) = sv.sigma_matrix(i, j) * cn(engine);
        return h;
    }

    ChannelRealization assemble_multiuser_channel(const std::vector<SpectralVariance> &per_user,
                                                  const WavenumberBasis &tx_basis,
                                                  const std::vector<WavenumberBasis> &rx_bases,
                                                  std::uint64_t seed, std::uint64_t trial_index,
                                                  SpaceDomain space)
    {
        if (per_user.empty() || per_user.size() != rx_bases.size())
            throw ConfigError("need one spectral variance per receive basis and at least one user");

        const auto n_s = Eigen::Index(tx_basis.size());
        Eigen::Index k_total = 0, nr_total = 0;
        for (std::size_t m = 0; m < per_user.size(); ++m)
        {
            const auto &sv = per_user[m];
            if (sv.sigma_matrix.cols() != n_s || sv.sigma_matrix.rows() != Eigen::Index(rx_bases[m].size()) ||
                sv.tx_elements != tx_basis.element_count() || sv.rx_elements != rx_bases[m].element_count())
            {
                std::ostringstream msg;
                msg << "user " << m << ": spectral variance is " << sv.sigma_matrix.rows() << "x"
                    << sv.sigma_matrix.cols() << " but bases imply " << rx_bases[m].size() << "x" << n_s;
                throw ConfigError(msg.str());
            }
            k_total += sv.sigma_matrix.rows();
            nr_total += Eigen::Index(rx_bases[m].element_count());
        }

        ChannelRealization r;
        r.seed = seed;
        r.trial_index = trial_index;
        r.per_user_wavenumber.reserve(per_user.size());
        r.stacked_wavenumber.resize(k_total, n_s);
        if (space == SpaceDomain::compute)
            r.stacked_space.resize(nr_total, Eigen::Index(tx_basis.element_count()));

        Eigen::Index row = 0, srow = 0;
        for (std::size_t m = 0; m < per_user.size(); ++m)
        {
            auto engine = rng::substream(seed, trial_index, rng::StreamTag::channel, m);
            CMatrix ha = sample_wavenumber_channel(per_user[m], engine);
            r.stacked_wavenumber.middleRows(row, ha.rows()) = ha;
            if (space == SpaceDomain::compute)
            {
                const auto &ur = rx_bases[m].harmonics;
                r.stacked_space.middleRows(srow, ur.rows()) = ur * ha * tx_basis.harmonics.adjoint();
                srow += ur.rows();
            }
            row += ha.rows();
            r.per_user_wavenumber.push_back(std::move(ha));
        }
        return r;
    }

    CorrelationSpectrum receive_correlation_spectrum(const SpectralVariance &sv, const WavenumberBasis &rx_basis)
    {
        const auto &ur = rx_basis.harmonics;
        if (sv.rx_var.size() != ur.cols())
            throw ConfigError("receive variance length does not match the receive basis");

        const double n_r = double(rx_basis.element_count());
        const RVector weights = n_r * sv.rx_var / sv.rx_var.sum();
        const CMatrix r = ur * weights.asDiagonal() * ur.adjoint();

        Eigen::SelfAdjointEigenSolver<CMatrix> eig(r, Eigen::EigenvaluesOnly);
        RVector ev = eig.eigenvalues();
        std::sort(ev.begin(), ev.end(), std::greater<>());

        std::ostringstream tag;
        tag << "rx " << rx_basis.geometry.n_h << "x" << rx_basis.geometry.n_v << " spacing "
            << rx_basis.geometry.spacing << " lambda";
        return {std::move(ev), tag.str()};
    }

    CorrelationSpectrum iid_correlation_spectrum(std::size_t rx_elements)
    {
        return {RVector::Ones(Eigen::Index(rx_elements)), "iid rayleigh"};
    }

    Eigen::Index numerical_rank(const CMatrix &m, double rel_tol)
    {
        if (m.size() == 0)
            return 0;
        Eigen::JacobiSVD<CMatrix> svd(m);
        const auto &s = svd.singularValues();
        if (s.size() == 0 || s[0] == 0.0)
            return 0;
        return (s.array() > rel_tol * s[0]).count();
    }
}
