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

#include "hmimo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace hmimo
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string_view> split_list(std::string_view s)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            while (true)
            {
                const auto comma = s.find(',', start);
                const auto item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
                if (item.empty())
                    throw ConfigError("empty element in list '" + std::string(s) + "'");
                out.push_back(item);
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            return out;
        }

        long long parse_integer(std::string_view text)
        {
            long long v = 0;
            const auto *end = text.data() + text.size();
            const auto [ptr, ec] = std::from_chars(text.data(), end, v);
            if (ec != std::errc() || ptr != end)
                throw ConfigError("expected an integer, got '" + std::string(text) + "'");
            return v;
        }

        std::pair<int, int> parse_shape(std::string_view text)
        {
            const auto x = text.find_first_of("xX");
            if (x == std::string_view::npos)
                throw ConfigError("array shape must look like 10x10, got '" + std::string(text) + "'");
            const auto h = parse_integer(trim(text.substr(0, x)));
            const auto v = parse_integer(trim(text.substr(x + 1)));
            if (h < 1 || v < 1 || h > 100000 || v > 100000)
                throw ConfigError("array shape out of range: '" + std::string(text) + "'");
            return {int(h), int(v)};
        }

        std::vector<double> parse_snr_grid(std::string_view text)
        {
            if (text.find(':') != std::string_view::npos)
            {
                const auto a = text.find(':');
                const auto b = text.find(':', a + 1);
                if (b == std::string_view::npos)
                    throw ConfigError("SNR range must be start:step:stop");
                const double start = parse_number(trim(text.substr(0, a)));
                const double step = parse_number(trim(text.substr(a + 1, b - a - 1)));
                const double stop = parse_number(trim(text.substr(b + 1)));
                if (!(step > 0.0) || stop < start)
                    throw ConfigError("SNR range needs a positive step and stop >= start");
                std::vector<double> out;
                const auto n = std::size_t(std::floor((stop - start) / step + 1e-9)) + 1;
                for (std::size_t k = 0; k < n; ++k)
                    out.push_back(start + double(k) * step);
                return out;
            }
            std::vector<double> out;
            for (auto item : split_list(text))
                out.push_back(parse_number(item));
            return out;
        }

        std::string shape_text(std::pair<int, int> s)
        {
            return std::to_string(s.first) + "x" + std::to_string(s.second);
        }

        template <typename T, typename F>
        std::string join(const std::vector<T> &v, F &&fmt)
        {
            std::string out;
            for (std::size_t k = 0; k < v.size(); ++k)
            {
                if (k)
                    out += ",";
                out += fmt(v[k]);
            }
            return out;
        }

        std::string geometry_label(const ArrayGeometry &g)
        {
            return std::to_string(g.n_h) + "x" + std::to_string(g.n_v) + "@" + spacing_label(g.spacing);
        }
    }

    double parse_number(std::string_view text)
    {
        text = trim(text);
        const auto slash = text.find('/');
        if (slash != std::string_view::npos)
        {
            const double num = parse_number(text.substr(0, slash));
            const double den = parse_number(text.substr(slash + 1));
            if (den == 0.0)
                throw ConfigError("division by zero in '" + std::string(text) + "'");
            return num / den;
        }
        double v = 0.0;
        const char *begin = text.data();
        if (!text.empty() && text.front() == '+')
            ++begin;
        const auto *end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
            throw ConfigError("expected a number, got '" + std::string(text) + "'");
        return v;
    }

    std::string format_number(double v)
    {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
    }

    std::string spacing_label(double spacing)
    {
        const double inv = 1.0 / spacing;
        const double r = std::round(inv);
        if (r >= 1.0 && std::abs(inv - r) < 1e-9 * r)
            return "1/" + std::to_string(static_cast<long long>(r));
        return format_number(spacing);
    }

    std::string ParameterSet::tx_label() const { return geometry_label(tx); }
    std::string ParameterSet::rx_label() const { return geometry_label(rx); }

    void ExperimentConfig::validate() const
    {
        auto check_sweep = [](const ArraySweep &s, const char *side)
        {
            if (s.shapes.empty() || s.spacings.empty())
                throw ConfigError(std::string(side) + ".shape and " + side + ".spacing_lambda are required");
            for (double d : s.spacings)
                if (!(d > 0.0) || !std::isfinite(d))
                    throw ConfigError(std::string(side) + ".spacing_lambda must be positive");
        };
        check_sweep(tx, "tx");
        check_sweep(rx, "rx");
        if (users < 1)
            throw ConfigError("users must be >= 1");
        if (n_trials < 1)
            throw ConfigError("trials must be >= 1");
        if (snr_grid_db.empty())
            throw ConfigError("snr_db grid is empty");
        for (std::size_t k = 1; k < snr_grid_db.size(); ++k)
            if (!(snr_grid_db[k] > snr_grid_db[k - 1]))
                throw ConfigError("snr_db grid must be strictly increasing");
        if (schemes.empty())
            throw ConfigError("schemes must not be empty");
    }

    std::vector<ParameterSet> ExperimentConfig::parameter_sets() const
    {
        std::vector<ParameterSet> out;
        for (auto ts : tx.shapes)
            for (double td : tx.spacings)
                for (auto rs : rx.shapes)
                    for (double rd : rx.spacings)
                        out.push_back({ArrayGeometry(ts.first, ts.second, td), ArrayGeometry(rs.first, rs.second, rd),
                                       users});
        return out;
    }

    MonteCarloOptions ExperimentConfig::monte_carlo_options(int threads) const
    {
        MonteCarloOptions opt;
        opt.n_trials = n_trials;
        opt.seed = seed;
        opt.normalization = normalization;
        opt.phase = phase;
        opt.threads = threads;
        return opt;
    }

    std::string ExperimentConfig::canonical() const
    {
        std::ostringstream out;
        out << "tx.shape=" << join(tx.shapes, shape_text) << "\n"
            << "tx.spacing_lambda=" << join(tx.spacings, format_number) << "\n"
            << "rx.shape=" << join(rx.shapes, shape_text) << "\n"
            << "rx.spacing_lambda=" << join(rx.spacings, format_number) << "\n"
            << "users=" << users << "\n"
            << "snr_db=" << join(snr_grid_db, format_number) << "\n"
            << "schemes=" << join(schemes, [](Scheme s) { return std::string(to_string(s)); }) << "\n"
            << "trials=" << n_trials << "\n"
            << "seed=" << seed << "\n"
            << "normalization=" << to_string(normalization) << "\n"
            << "phase=" << (phase == PhaseMode::ones ? "ones" : "random") << "\n";
        return out.str();
    }

    std::string ExperimentConfig::hash() const
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : canonical())
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    ExperimentConfig parse_config(std::string_view text, std::string_view source)
    {
        ExperimentConfig cfg;
        cfg.snr_grid_db = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
        cfg.schemes = {Scheme::mrt, Scheme::zf, Scheme::mmse};

        std::map<std::string, int, std::less<>> seen;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const auto nl = text.find('\n', pos);
            auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            auto where = [&]
            { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(where() + "expected 'key = value'");
            const auto key = trim(line.substr(0, eq));
            const auto value = trim(line.substr(eq + 1));
            if (value.empty())
                throw ConfigError(where() + "missing value for '" + std::string(key) + "'");
            if (seen.count(key))
                throw ConfigError(where() + "duplicate key '" + std::string(key) + "'");
            seen.emplace(std::string(key), int(line_no));

            try
            {
                if (key == "tx.shape" || key == "rx.shape")
                {
                    auto &dst = key.front() == 't' ? cfg.tx.shapes : cfg.rx.shapes;
                    for (auto item : split_list(value))
                        dst.push_back(parse_shape(item));
                }
                else if (key == "tx.spacing_lambda" || key == "rx.spacing_lambda")
                {
                    auto &dst = key.front() == 't' ? cfg.tx.spacings : cfg.rx.spacings;
                    for (auto item : split_list(value))
                        dst.push_back(parse_number(item));
                }
                else if (key == "users")
                    cfg.users = int(parse_integer(value));
                else if (key == "snr_db")
                    cfg.snr_grid_db = parse_snr_grid(value);
                else if (key == "schemes")
                {
                    cfg.schemes.clear();
                    for (auto item : split_list(value))
                        cfg.schemes.push_back(parse_scheme(item));
                }
                else if (key == "trials")
                {
                    const auto n = parse_integer(value);
                    if (n < 1)
                        throw ConfigError("trials must be >= 1");
                    cfg.n_trials = std::size_t(n);
                }
                else if (key == "seed")
                {
                    const auto n = parse_integer(value);
                    if (n < 0)
                        throw ConfigError("seed must be non-negative");
                    cfg.seed = std::uint64_t(n);
                }
                else if (key == "normalization")
                    cfg.normalization = parse_normalization(value);
                else if (key == "phase")
                {
                    if (value == "ones")
                        cfg.phase = PhaseMode::ones;
                    else if (value == "random")
                        cfg.phase = PhaseMode::random;
                    else
                        throw ConfigError("phase must be 'ones' or 'random'");
                }
                else if (key == "output_dir")
                    cfg.output_dir = std::string(value);
                else
                    throw ConfigError("unknown key '" + std::string(key) + "'");
            }
            catch (const ConfigError &e)
            {
                const std::string msg = e.what();
                throw ConfigError(msg.rfind(std::string(source), 0) == 0 ? msg : where() + msg);
            }
        }
        cfg.validate();
        return cfg;
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open config file: " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str(), path.string());
    }
}
