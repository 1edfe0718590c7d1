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

#include "hmimo/channel_dump.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hmimo
{
    namespace
    {
        constexpr std::array<char, 4> magic{'H', 'C', 'H', '1'};

        template <typename U>
        void put_le(std::vector<unsigned char> &buf, U v)
        {
            for (std::size_t b = 0; b < sizeof(U); ++b)
                buf.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xffu));
        }

        template <typename U>
        U get_le(const unsigned char *p)
        {
            U v = 0;
            for (std::size_t b = 0; b < sizeof(U); ++b)
                v |= U(p[b]) << (8 * b);
            return v;
        }

        void put_matrix(std::vector<unsigned char> &buf, const CMatrix &m)
        {
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                {
                    put_le(buf, std::bit_cast<std::uint32_t>(float(m(i, j).real())));
                    put_le(buf, std::bit_cast<std::uint32_t>(float(m(i, j).imag())));
                }
        }

        CMatrixF get_matrix(const unsigned char *&p, Eigen::Index rows, Eigen::Index cols)
        {
            CMatrixF m(rows, cols);
            for (Eigen::Index i = 0; i < rows; ++i)
                for (Eigen::Index j = 0; j < cols; ++j)
                {
                    const float re = std::bit_cast<float>(get_le<std::uint32_t>(p));
                    const float im = std::bit_cast<float>(get_le<std::uint32_t>(p + 4));
                    m(i, j) = {re, im};
                    p += 8;
                }
            return m;
        }

        std::string with_path(const std::string &what, const std::filesystem::path &path)
        {
            return what + ": " + path.string();
        }
    }

    ChannelDumpHeader make_dump_header(const MultiUserLink &link, std::uint64_t seed, std::uint64_t count)
    {
        if (link.users() == 0)
            throw ConfigError("cannot dump a link without users");
        for (const auto &b : link.rx)
            if (b.size() != link.rx.front().size() || b.element_count() != link.rx.front().element_count())
                throw ConfigError("HCH1 requires identical receive arrays for all users");
        ChannelDumpHeader h;
        h.users = std::uint32_t(link.users());
        h.rx_elements = std::uint32_t(link.rx.front().element_count());
        h.tx_elements = std::uint32_t(link.tx.element_count());
        h.rx_harmonics = std::uint32_t(link.rx.front().size());
        h.tx_harmonics = std::uint32_t(link.tx.size());
        h.seed = seed;
        h.count = count;
        return h;
    }

    std::uintmax_t dump_file_size(const ChannelDumpHeader &h)
    {
        const std::uintmax_t per = std::uintmax_t(h.users) * h.rx_harmonics * h.tx_harmonics +
                                   std::uintmax_t(h.users) * h.rx_elements * h.tx_elements;
        return dump_header_bytes + h.count * per * 8u;
    }

    void write_channel_dump(const std::filesystem::path &path, const ChannelDumpHeader &header,
                            std::span<const ChannelRealization> realizations)
    {
        if (header.count != realizations.size())
            throw ConfigError("HCH1 header count does not match the number of realizations");

        const auto wn_rows = Eigen::Index(header.users) * header.rx_harmonics;
        const auto sp_rows = Eigen::Index(header.users) * header.rx_elements;
        std::vector<unsigned char> buf;
        buf.reserve(std::size_t(dump_file_size(header)));
        buf.insert(buf.end(), magic.begin(), magic.end());
        put_le(buf, header.users);
        put_le(buf, header.rx_elements);
        put_le(buf, header.tx_elements);
        put_le(buf, header.rx_harmonics);
        put_le(buf, header.tx_harmonics);
        put_le(buf, header.seed);
        put_le(buf, header.count);

        for (const auto &r : realizations)
        {
            if (r.stacked_wavenumber.rows() != wn_rows || r.stacked_wavenumber.cols() != Eigen::Index(header.tx_harmonics) ||
                r.stacked_space.rows() != sp_rows || r.stacked_space.cols() != Eigen::Index(header.tx_elements))
                throw ConfigError("realization shape does not match the HCH1 header (was the space domain skipped?)");
            put_matrix(buf, r.stacked_wavenumber);
            put_matrix(buf, r.stacked_space);
        }

        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError(with_path("cannot open channel dump for writing", path));
        out.write(reinterpret_cast<const char *>(buf.data()), std::streamsize(buf.size()));
        if (!out)
            throw IoError(with_path("failed writing channel dump", path));
    }

    ChannelDump read_channel_dump(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError(with_path("cannot open channel dump", path));
        std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

        if (buf.size() < dump_header_bytes || std::memcmp(buf.data(), magic.data(), magic.size()) != 0)
            throw IoError(with_path("not an HCH1 channel dump", path));

        ChannelDump dump;
        const unsigned char *p = buf.data() + 4;
        auto &h = dump.header;
        h.users = get_le<std::uint32_t>(p);
        h.rx_elements = get_le<std::uint32_t>(p + 4);
        h.tx_elements = get_le<std::uint32_t>(p + 8);
        h.rx_harmonics = get_le<std::uint32_t>(p + 12);
        h.tx_harmonics = get_le<std::uint32_t>(p + 16);
        h.seed = get_le<std::uint64_t>(p + 20);
        h.count = get_le<std::uint64_t>(p + 28);
        p = buf.data() + dump_header_bytes;

        if (buf.size() != dump_file_size(h))
        {
            std::ostringstream msg;
            msg << "HCH1 size mismatch (" << buf.size() << " bytes, header implies " << dump_file_size(h) << ")";
            throw IoError(with_path(msg.str(), path));
        }

        const auto wn_rows = Eigen::Index(h.users) * h.rx_harmonics;
        const auto sp_rows = Eigen::Index(h.users) * h.rx_elements;
        dump.realizations.reserve(std::size_t(h.count));
        for (std::uint64_t n = 0; n < h.count; ++n)
        {
            DumpedRealization r;
            r.wavenumber = get_matrix(p, wn_rows, h.tx_harmonics);
            r.space = get_matrix(p, sp_rows, h.tx_elements);
            dump.realizations.push_back(std::move(r));
        }
        return dump;
    }
}
