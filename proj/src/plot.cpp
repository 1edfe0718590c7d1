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

#include "hmimo/plot.hpp"
#include "hmimo/types.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace hmimo
{
    namespace
    {
        std::vector<std::string> split_csv_line(const std::string &line)
        {
            std::vector<std::string> out;
            std::string cell;
            std::istringstream ss(line);
            while (std::getline(ss, cell, ','))
                out.push_back(cell);
            if (!line.empty() && line.back() == ',')
                out.emplace_back();
            return out;
        }

        std::string escape(const std::string &s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '&': out += "&amp;"; break;
                case '"': out += "&quot;"; break;
                default: out += c;
                }
            }
            return out;
        }

        // Round step for roughly `target` ticks across [lo, hi]
        double nice_step(double lo, double hi, int target)
        {
            const double raw = (hi - lo) / target;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            const double f = raw / mag;
            return (f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0) * mag;
        }

        std::string fmt(double v)
        {
            std::ostringstream s;
            s.precision(4);
            s << (std::abs(v) < 1e-12 ? 0.0 : v);
            return s.str();
        }

        // Numeric series values are shortened for the legend; anything else is kept verbatim
        std::string legend_value(const std::string &cell)
        {
            std::size_t used = 0;
            try
            {
                const double v = std::stod(cell, &used);
                if (used == cell.size())
                    return fmt(v);
            }
            catch (const std::exception &)
            {
            }
            return cell;
        }

        constexpr const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    }

    std::string render_csv_plot_text(const std::string &csv_text, const PlotSpec &spec)
    {
        std::istringstream in(csv_text);
        std::string line;
        if (!std::getline(in, line))
            throw IoError("cannot plot an empty CSV");
        const auto header = split_csv_line(line);
        auto column = [&](const std::string &name)
        {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end())
                throw IoError("CSV has no column '" + name + "'");
            return std::size_t(it - header.begin());
        };
        const auto xc = column(spec.x_column), yc = column(spec.y_column);
        std::vector<std::size_t> sc;
        for (const auto &s : spec.series_columns)
            sc.push_back(column(s));

        // Curves keep first-appearance order
        std::vector<std::string> order;
        std::map<std::string, std::vector<std::pair<double, double>>> curves;
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            const auto cells = split_csv_line(line);
            if (cells.size() != header.size())
                throw IoError("ragged CSV row: " + line);
            std::string key;
            for (std::size_t c : sc)
                key += (key.empty() ? "" : " ") + legend_value(cells[c]);
            const double x = std::stod(cells[xc]), y = std::stod(cells[yc]);
            if (!curves.count(key))
                order.push_back(key);
            curves[key].emplace_back(x, y);
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        if (order.empty())
            xmin = ymin = 0.0, xmax = ymax = 1.0;
        if (xmax <= xmin)
            xmax = xmin + 1.0;
        ymin = std::min(ymin, 0.0);
        if (ymax <= ymin)
            ymax = ymin + 1.0;
        ymax += 0.05 * (ymax - ymin);

        const double width = 820, height = 520, left = 70, right = 240, top = 40, bottom = 60;
        const double pw = width - left - right, ph = height - top - bottom;
        auto px = [&](double x)
        { return left + (x - xmin) / (xmax - xmin) * pw; };
        auto py = [&](double y)
        { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
            << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
            << escape(spec.title) << "</text>\n"
            << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
            << "\" fill=\"none\" stroke=\"black\"/>\n";

        const double xs = nice_step(xmin, xmax, 8), ys = nice_step(ymin, ymax, 6);
        for (double t = std::ceil(xmin / xs) * xs; t <= xmax + 1e-9 * xs; t += xs)
            svg << "<line x1=\"" << px(t) << "\" y1=\"" << top + ph << "\" x2=\"" << px(t) << "\" y2=\"" << top
                << "\" stroke=\"#ddd\"/><text x=\"" << px(t) << "\" y=\"" << top + ph + 16
                << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
        for (double t = std::ceil(ymin / ys) * ys; t <= ymax + 1e-9 * ys; t += ys)
            svg << "<line x1=\"" << left << "\" y1=\"" << py(t) << "\" x2=\"" << left + pw << "\" y2=\"" << py(t)
                << "\" stroke=\"#ddd\"/><text x=\"" << left - 6 << "\" y=\"" << py(t) + 4
                << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
        svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 18 << "\" text-anchor=\"middle\">"
            << escape(spec.x_label) << "</text>\n"
            << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
            << escape(spec.y_label) << "</text>\n";

        for (std::size_t k = 0; k < order.size(); ++k)
        {
            const auto *color = palette[k % std::size(palette)];
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
            for (const auto &[x, y] : curves[order[k]])
                svg << px(x) << "," << py(y) << " ";
            svg << "\"/>\n";
            const double ly = top + 14 + 18 * double(k);
            svg << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw + 32
                << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>"
                << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly << "\">" << escape(order[k]) << "</text>\n";
        }
        svg << "</svg>\n";
        return svg.str();
    }

    void render_csv_plot(const std::filesystem::path &csv, const std::filesystem::path &svg, const PlotSpec &spec)
    {
        std::ifstream in(csv, std::ios::binary);
        if (!in)
            throw IoError("cannot open CSV for plotting: " + csv.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        const auto doc = render_csv_plot_text(ss.str(), spec);
        std::ofstream out(svg, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open for writing: " + svg.string());
        out << doc;
        if (!out)
            throw IoError("failed writing: " + svg.string());
    }
}
