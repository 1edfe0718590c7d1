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

#include "hmimo/precoding.hpp"

#include <cmath>
#include <sstream>

namespace hmimo
{
    std::string_view to_string(Scheme s) noexcept
    {
        switch (s)
        {
        case Scheme::mrt: return "mrt";
        case Scheme::zf: return "zf";
        case Scheme::mmse: return "mmse";
        }
        return "unknown";
    }

    Scheme parse_scheme(std::string_view name)
    {
        if (name == "mrt") return Scheme::mrt;
        if (name == "zf") return Scheme::zf;
        if (name == "mmse") return Scheme::mmse;
        throw ConfigError("unknown precoding scheme '" + std::string(name) + "' (expected mrt, zf or mmse)");
    }

    std::string_view to_string(PowerNormalization n) noexcept
    {
        return n == PowerNormalization::total_streams ? "total-K" : "per-user";
    }

    PowerNormalization parse_normalization(std::string_view name)
    {
        if (name == "total-K") return PowerNormalization::total_streams;
        if (name == "per-user") return PowerNormalization::per_user;
        throw ConfigError("unknown normalization '" + std::string(name) + "' (expected total-K or per-user)");
    }

    EffectiveChannel effective_channel(const CMatrix &stacked_wavenumber, std::size_t users,
                                       const WavenumberBasis &tx_basis, const CVector &phase)
    {
        const auto n_el = tx_basis.harmonics.rows();
        if (phase.size() != n_el)
            throw ConfigError("phase vector length must equal the number of transmit elements");
        if (stacked_wavenumber.cols() != tx_basis.harmonics.cols())
            throw ConfigError("wavenumber channel width does not match the transmit basis");
        if (users == 0 || stacked_wavenumber.rows() % Eigen::Index(users) != 0)
            throw ConfigError("stream count is not a multiple of the user count");
        for (Eigen::Index k = 0; k < phase.size(); ++k)
            if (std::abs(std::abs(phase[k]) - 1.0) > 1e-9)
            {
                std::ostringstream msg;
                msg << "phase entry " << k << " has modulus " << std::abs(phase[k]) << ", expected 1";
                throw ValidationError(msg.str());
            }

        EffectiveChannel ch;
        ch.matrix = (stacked_wavenumber * tx_basis.harmonics.adjoint()) * phase.asDiagonal();
        ch.phase = phase;
        ch.users = users;
        return ch;
    }

    EffectiveChannel effective_channel(const ChannelRealization &realization, const WavenumberBasis &tx_basis,
                                       const CVector &phase)
    {
        return effective_channel(realization.stacked_wavenumber, realization.per_user_wavenumber.size(), tx_basis,
                                 phase);
    }

    CVector unit_phase(Eigen::Index n)
    {
        return CVector::Ones(n);
    }

    CVector random_phase(Eigen::Index n, std::uint64_t seed, std::uint64_t trial)
    {
        auto engine = rng::substream(seed, trial, rng::StreamTag::phase);
        std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
        CVector phi(n);
        for (Eigen::Index k = 0; k < n; ++k)
            phi[k] = std::polar(1.0, u(engine));
        return phi;
    }

    namespace
    {
        // H̃ᴴ(G + load·I)⁻¹ from a Cholesky factorization of the K×K Gram matrix G = H̃H̃ᴴ
        CMatrix gram_solve(const CMatrix &channel, double load, bool check_condition)
        {
            const auto k = channel.rows();
            CMatrix gram = channel * channel.adjoint();
            if (load > 0.0)
                gram.diagonal().array() += load;

            if (check_condition)
            {
                if (channel.cols() < k)
                {
                    std::ostringstream msg;
                    msg << "ZF needs at least as many transmit dimensions as streams: K = " << k << " > "
                        << channel.cols();
                    throw SingularError(msg.str());
                }
                Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
                const double lo = eig.eigenvalues().minCoeff();
                const double hi = eig.eigenvalues().maxCoeff();
                if (!(hi > 0.0) || !(lo > 0.0) || hi / lo > max_gram_condition)
                {
                    std::ostringstream msg;
                    msg << "ZF Gram matrix of dimension K = " << k << " is rank deficient (condition number "
                        << (lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity()) << ")";
                    throw SingularError(msg.str());
                }
            }

            Eigen::LLT<CMatrix> llt(gram);
            if (llt.info() != Eigen::Success)
            {
                std::ostringstream msg;
                msg << "Gram matrix of dimension K = " << k << " is not positive definite";
                throw SingularError(msg.str());
            }
            // F = H̃ᴴ G⁻¹  ⇔  Fᴴ = G⁻¹ H̃ (G Hermitian)
            return llt.solve(channel).adjoint();
        }

        void normalize_columns(CMatrix &f, const EffectiveChannel &ch, PowerNormalization norm, const char *what)
        {
            const double count = norm == PowerNormalization::total_streams ? double(ch.streams())
                                                                             : double(ch.streams_per_user());
            const double root = std::sqrt(count);
            for (Eigen::Index i = 0; i < f.cols(); ++i)
            {
                const double n = f.col(i).norm();
                if (!(n > 0.0))
                {
                    std::ostringstream msg;
                    msg << what << " precoder column " << i << " vanishes";
                    throw DegenerateChannelError(msg.str());
                }
                f.col(i) /= root * n;
            }
        }
    }

    CMatrix zf_directions(const CMatrix &channel)
    {
        return gram_solve(channel, 0.0, true);
    }

    Precoder zf_precoder(const EffectiveChannel &ch, PowerNormalization norm)
    {
        Precoder p{zf_directions(ch.matrix), Scheme::zf, norm};
        normalize_columns(p.matrix, ch, norm, "ZF");
        return p;
    }

    Precoder mrt_precoder(const EffectiveChannel &ch, PowerNormalization norm)
    {
        for (Eigen::Index i = 0; i < ch.matrix.rows(); ++i)
            if (!(ch.matrix.row(i).norm() > 0.0))
            {
                std::ostringstream msg;
                msg << "MRT: channel row " << i << " is zero";
                throw DegenerateChannelError(msg.str());
            }
        Precoder p{ch.matrix.adjoint(), Scheme::mrt, norm};
        normalize_columns(p.matrix, ch, norm, "MRT");
        return p;
    }

    Precoder mmse_precoder(const EffectiveChannel &ch, double p_u, double noise_var, PowerNormalization norm)
    {
        if (!(p_u > 0.0) || !(noise_var > 0.0))
            throw DomainError("MMSE precoding needs positive transmit power and noise variance");
        const double load = double(ch.streams()) * noise_var / p_u;
        Precoder p{gram_solve(ch.matrix, load, false), Scheme::mmse, norm};
        normalize_columns(p.matrix, ch, norm, "MMSE");
        return p;
    }

    Precoder make_precoder(Scheme scheme, const EffectiveChannel &ch, double p_u, double noise_var,
                           PowerNormalization norm)
    {
        switch (scheme)
        {
        case Scheme::mrt: return mrt_precoder(ch, norm);
        case Scheme::zf: return zf_precoder(ch, norm);
        case Scheme::mmse: return mmse_precoder(ch, p_u, noise_var, norm);
        }
        throw ConfigError("unknown precoding scheme");
    }
}
