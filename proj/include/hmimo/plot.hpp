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

#include <filesystem>
#include <string>
#include <vector>

namespace hmimo
{
    struct PlotSpec
    {
        std::string title;
        std::string x_column;
        std::string y_column;
        std::vector<std::string> series_columns; // rows with equal values here form one curve
        std::string x_label;
        std::string y_label;
    };

    // Renders an SVG line plot from a CSV file written by this library. The CSV is the only input, so
    // plots can be regenerated offline.
    void render_csv_plot(const std::filesystem::path &csv, const std::filesystem::path &svg, const PlotSpec &spec);

    // Same, from CSV text; returns the SVG document
    std::string render_csv_plot_text(const std::string &csv_text, const PlotSpec &spec);
}
