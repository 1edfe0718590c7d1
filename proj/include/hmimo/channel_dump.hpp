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

// HCH1 channel container.
//
//   offset  size  field
//   0       4     magic "HCH1"
//   4       4     M       users                       (u32, little-endian)
//   8       4     N_r     receive elements per user   (u32)
//   12      4     N_s     transmit elements           (u32)
//   16      4     n_r     receive harmonics per user  (u32)
//   20      4     n_s     transmit harmonics          (u32)
//   24      8     seed                                (u64)
//   32      8     count   number of realizations      (u64)
//   40      ...   count × { H_a (M·n_r × n_s), H (M·N_r × N_s) }
//
// Matrices are row-major complex64: float32 real part followed by float32 imaginary part.

#include "hmimo/channel.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace hmimo
{
    inline constexpr std::size_t dump_header_bytes = 40;

    struct ChannelDumpHeader
    {
        std::uint32_t users = 0;
        std::uint32_t rx_elements = 0;
        std::uint32_t tx_elements = 0;
        std::uint32_t rx_harmonics = 0;
        std::uint32_t tx_harmonics = 0;
        std::uint64_t seed = 0;
        std::uint64_t count = 0;

        bool operator==(const ChannelDumpHeader &) const = default;
    };

    using CMatrixF = Eigen::Matrix<std::complex<float>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    struct DumpedRealization
    {
        CMatrixF wavenumber; // M·n_r × n_s
        CMatrixF space;      // M·N_r × N_s
    };

    struct ChannelDump
    {
        ChannelDumpHeader header;
        std::vector<DumpedRealization> realizations;
    };

    ChannelDumpHeader make_dump_header(const MultiUserLink &link, std::uint64_t seed, std::uint64_t count);

    // Total file size implied by a header
    std::uintmax_t dump_file_size(const ChannelDumpHeader &h);

    // Realizations must carry the space-domain channel. Throws IoError with the path on failure.
    void write_channel_dump(const std::filesystem::path &path, const ChannelDumpHeader &header,
                            std::span<const ChannelRealization> realizations);

    ChannelDump read_channel_dump(const std::filesystem::path &path);
}
