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

#include "hmimo/types.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <vector>

namespace hmimo
{
    // All lengths in this library are expressed in wavelengths (λ = 1), so the
    // free-space wavenumber is κ = 2π.

    // Uniform planar patch-antenna array. Elements sit on a row-major grid:
    // element j is at ((j mod n_h)·Δ, ⌊j/n_h⌋·Δ, 0) + origin.
    struct ArrayGeometry
    {
        int n_h = 1;                         // Horizontal element count
        int n_v = 1;                         // Vertical element count
        double spacing = 0.5;                // Element spacing Δ in wavelengths
        std::array<double, 3> origin{};      // Offset of element 0 in wavelengths

        ArrayGeometry() = default;
        ArrayGeometry(int n_h, int n_v, double spacing, std::array<double, 3> origin = {});

        std::size_t element_count() const noexcept { return std::size_t(n_h) * std::size_t(n_v); }
        double aperture_x() const noexcept { return n_h * spacing; } // L_x / λ
        double aperture_y() const noexcept { return n_v * spacing; } // L_y / λ
        std::array<double, 3> element_position(std::size_t j) const;

        // Throws ConfigError when counts < 1 or spacing is not a positive finite number
        void validate() const;

        bool operator==(const ArrayGeometry &) const = default;
    };

    // Integer harmonic index (m_x, m_y) of a plane wave on the array aperture
    struct WavenumberIndex
    {
        int x = 0;
        int y = 0;
        auto operator<=>(const WavenumberIndex &) const = default;
    };

    enum class LinkSide
    {
        transmit,
        receive
    };

    // Lattice-ellipse index set plus the harmonic matrix U (elements × |indices|).
    // Column k holds the sampled plane wave for indices[k], scaled by 1/√N.
    struct WavenumberBasis
    {
        ArrayGeometry geometry;
        LinkSide side = LinkSide::transmit;
        std::vector<WavenumberIndex> indices;
        CMatrix harmonics;

        std::size_t size() const noexcept { return indices.size(); }
        std::size_t element_count() const noexcept { return geometry.element_count(); }
    };

    // Integer pairs with (m_x/L_x)² + (m_y/L_y)² ≤ 1, sorted lexicographically by (m_x, m_y).
    // Always contains (0,0).
    std::vector<WavenumberIndex> enumerate_lattice_ellipse(const ArrayGeometry &geometry);

    // True iff the index lies inside (or on) the lattice ellipse of the given apertures
    bool inside_lattice_ellipse(WavenumberIndex index, double aperture_x, double aperture_y) noexcept;

    // Longitudinal wavenumber γ = √(κ² − (2π m_x/L_x)² − (2π m_y/L_y)²).
    // Throws DomainError when the index lies outside the lattice ellipse.
    double z_wavenumber(WavenumberIndex index, const ArrayGeometry &geometry);

    // Plane-wave harmonic matrix. Entry (j, k) is
    //   (1/√N) exp(∓i(2π m_x x_j/L_x + 2π m_y y_j/L_y + γ z_j)),
    // with − on the transmit side and + on the receive side.
    WavenumberBasis build_harmonic_matrix(const ArrayGeometry &geometry, LinkSide side);
}
