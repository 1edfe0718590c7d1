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

#include "hmimo/geometry.hpp"

#include <cmath>
#include <sstream>

namespace hmimo
{
    namespace
    {
        // Absorbs rounding in products like 3·(1/3) so that indices on the ellipse boundary are kept
        constexpr double ellipse_slack = 1e-12;

        double ellipse_radius2(WavenumberIndex index, double aperture_x, double aperture_y) noexcept
        {
            const double ux = index.x / aperture_x;
            const double uy = index.y / aperture_y;
            return ux * ux + uy * uy;
        }
    }

    ArrayGeometry::ArrayGeometry(int n_h_, int n_v_, double spacing_, std::array<double, 3> origin_)
        : n_h(n_h_), n_v(n_v_), spacing(spacing_), origin(origin_)
    {
        validate();
    }

    void ArrayGeometry::validate() const
    {
        if (n_h < 1 || n_v < 1)
        {
            std::ostringstream msg;
            msg << "array element counts must be >= 1 (got " << n_h << "x" << n_v << ")";
            throw ConfigError(msg.str());
        }
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw ConfigError("array spacing must be a positive finite number of wavelengths");
        for (double c : origin)
            if (!std::isfinite(c))
                throw ConfigError("array origin must be finite");
    }

    std::array<double, 3> ArrayGeometry::element_position(std::size_t j) const
    {
        const auto col = double(j % std::size_t(n_h));
        const auto row = double(j / std::size_t(n_h));
        return {origin[0] + col * spacing, origin[1] + row * spacing, origin[2]};
    }

    bool inside_lattice_ellipse(WavenumberIndex index, double aperture_x, double aperture_y) noexcept
    {
        return ellipse_radius2(index, aperture_x, aperture_y) <= 1.0 + ellipse_slack;
    }

    std::vector<WavenumberIndex> enumerate_lattice_ellipse(const ArrayGeometry &geometry)
    {
        geometry.validate();
        const double lx = geometry.aperture_x();
        const double ly = geometry.aperture_y();
        const int mx_max = int(std::floor(lx + ellipse_slack));
        const int my_max = int(std::floor(ly + ellipse_slack));

        std::vector<WavenumberIndex> out;
        for (int mx = -mx_max; mx <= mx_max; ++mx)
            for (int my = -my_max; my <= my_max; ++my)
                if (inside_lattice_ellipse({mx, my}, lx, ly))
                    out.push_back({mx, my});
        return out;
    }

    double z_wavenumber(WavenumberIndex index, const ArrayGeometry &geometry)
    {
        const double lx = geometry.aperture_x();
        const double ly = geometry.aperture_y();
        if (!inside_lattice_ellipse(index, lx, ly))
        {
            std::ostringstream msg;
            msg << "wavenumber index (" << index.x << ", " << index.y
                << ") lies outside the lattice ellipse of a " << lx << " x " << ly << " wavelength aperture";
            throw DomainError(msg.str());
        }
        const double kappa = 2.0 * pi;
        const double rest = 1.0 - ellipse_radius2(index, lx, ly);
        return kappa * std::sqrt(std::max(rest, 0.0));
    }

    WavenumberBasis build_harmonic_matrix(const ArrayGeometry &geometry, LinkSide side)
    {
        WavenumberBasis basis;
        basis.geometry = geometry;
        basis.side = side;
        basis.indices = enumerate_lattice_ellipse(geometry);

        const std::size_t n_el = geometry.element_count();
        const std::size_t n_idx = basis.indices.size();
        const double lx = geometry.aperture_x();
        const double ly = geometry.aperture_y();
        const double scale = 1.0 / std::sqrt(double(n_el));
        const double sign = side == LinkSide::transmit ? -1.0 : 1.0;

        basis.harmonics.resize(Eigen::Index(n_el), Eigen::Index(n_idx));
        for (std::size_t k = 0; k < n_idx; ++k)
        {
            const auto idx = basis.indices[k];
            const double gamma = z_wavenumber(idx, geometry);
            for (std::size_t j = 0; j < n_el; ++j)
            {
                const auto p = geometry.element_position(j);
                const double phase = 2.0 * pi * idx.x * p[0] / lx + 2.0 * pi * idx.y * p[1] / ly + gamma * p[2];
                basis.harmonics(Eigen::Index(j), Eigen::Index(k)) = scale * std::polar(1.0, sign * phase);
            }
        }
        return basis;
    }
}
