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

#include <doctest.h>

#include <cstring>
#include <fstream>

using namespace hmimo;

namespace
{
    std::filesystem::path scratch(const char *name)
    {
        const auto dir = std::filesystem::temp_directory_path() / "hmimo_test_dump";
        std::filesystem::create_directories(dir);
        return dir / name;
    }

    std::vector<char> slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }
}

TEST_CASE("HCH1 round trip")
{
    const auto link = make_link({5, 4, 0.25}, {2, 3, 0.5}, 2);
    std::vector<ChannelRealization> reals;
    for (std::uint64_t t = 0; t < 3; ++t)
        reals.push_back(assemble_multiuser_channel(link, 77, t));
    const auto header = make_dump_header(link, 77, 3);
    CHECK(header.users == 2);
    CHECK(header.rx_elements == 6);
    CHECK(header.tx_elements == 20);
    CHECK(header.rx_harmonics == link.rx[0].size());
    CHECK(header.tx_harmonics == link.tx.size());
    CHECK(header.seed == 77);
    CHECK(header.count == 3);

    const auto path = scratch("roundtrip.hch");
    write_channel_dump(path, header, reals);
    CHECK(std::filesystem::file_size(path) == dump_file_size(header));
    const auto k = std::uintmax_t(2 * link.rx[0].size()), ns = link.tx.size();
    CHECK(dump_file_size(header) == dump_header_bytes + 3 * 8 * (k * ns + 12 * 20));

    const auto bytes = slurp(path);
    CHECK(std::memcmp(bytes.data(), "HCH1", 4) == 0);
    CHECK(bytes[4] == 2); // little-endian M

    const auto dump = read_channel_dump(path);
    CHECK(dump.header == header);
    REQUIRE(dump.realizations.size() == 3);
    for (std::size_t t = 0; t < 3; ++t)
    {
        const auto &d = dump.realizations[t];
        REQUIRE(d.wavenumber.rows() == reals[t].stacked_wavenumber.rows());
        REQUIRE(d.space.rows() == reals[t].stacked_space.rows());
        // complex64 storage: exact to float rounding
        CHECK(d.wavenumber == reals[t].stacked_wavenumber.cast<std::complex<float>>());
        CHECK(d.space == reals[t].stacked_space.cast<std::complex<float>>());
    }
    // First payload value is H_a(0, 0) as float32 real, float32 imag
    float re = 0, im = 0;
    std::memcpy(&re, bytes.data() + dump_header_bytes, 4);
    std::memcpy(&im, bytes.data() + dump_header_bytes + 4, 4);
    CHECK(re == float(reals[0].stacked_wavenumber(0, 0).real()));
    CHECK(im == float(reals[0].stacked_wavenumber(0, 0).imag()));
    // Row-major: second value is H_a(0, 1)
    std::memcpy(&re, bytes.data() + dump_header_bytes + 8, 4);
    CHECK(re == float(reals[0].stacked_wavenumber(0, 1).real()));
}

TEST_CASE("HCH1 reader rejects malformed files")
{
    const auto link = make_link({3, 3, 0.25}, {2, 2, 0.5}, 1);
    const std::vector<ChannelRealization> reals{assemble_multiuser_channel(link, 1, 0)};
    const auto path = scratch("bad.hch");
    write_channel_dump(path, make_dump_header(link, 1, 1), reals);

    auto bytes = slurp(path);
    bytes[0] = 'X';
    std::ofstream(path, std::ios::binary | std::ios::trunc).write(bytes.data(), std::streamsize(bytes.size()));
    CHECK_THROWS_AS(read_channel_dump(path), IoError);

    bytes[0] = 'H';
    bytes.pop_back();
    std::ofstream(path, std::ios::binary | std::ios::trunc).write(bytes.data(), std::streamsize(bytes.size()));
    CHECK_THROWS_AS(read_channel_dump(path), IoError);

    CHECK_THROWS_AS(read_channel_dump(scratch("missing.hch")), IoError);

    std::vector<ChannelRealization> no_space{assemble_multiuser_channel(link, 1, 0, SpaceDomain::skip)};
    CHECK_THROWS(write_channel_dump(scratch("nospace.hch"), make_dump_header(link, 1, 1), no_space));
    try
    {
        read_channel_dump(scratch("missing.hch"));
    }
    catch (const IoError &e)
    {
        CHECK(std::string(e.what()).find("missing.hch") != std::string::npos);
    }
}
