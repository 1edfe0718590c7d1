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

#include "hmimo/geometry.hpp"

namespace hmimo
{
    // Per-harmonic variances of a separable isotropic link.
    //
    // tx_var and rx_var each sum to one; sigma_matrix(i, j) = √(N_r N_s rx_var[i] tx_var[j]) is the
    // standard deviation of wavenumber coefficient (i, j), so that E‖H_a‖²_F = N_r N_s.
    struct SpectralVariance
    {
        RVector tx_var;
        RVector rx_var;
        RMatrix sigma_matrix;
        std::size_t tx_elements = 0; // N_s
        std::size_t rx_elements = 0; // N_r
    };

    // Fraction of isotropic scattering power that falls into the wavenumber cell of `index`.
    //
    // The cell is centered on the lattice point, [2π(m−½)/L, 2π(m+½)/L] per axis, and is clipped
    // to the propagating disk k_x² + k_y² ≤ κ². The value is
    //   ∬_{cell ∩ disk} (κ² − k_x² − k_y²)^{-1/2} dk  /  2πκ,
    // i.e. the probability that a uniformly random direction on the hemisphere projects into
    // the cell. Returns exactly 0 for cells that do not intersect the disk.
    double cell_variance(WavenumberIndex index, double aperture_x, double aperture_y);

    // Absolute quadrature tolerance used per cell
    inline constexpr double cell_variance_tolerance = 1e-9;

    // Raw (un-normalized) cell variances for every index of a basis; cells are integrated in parallel
    RVector cell_variances(const WavenumberBasis &basis);

    SpectralVariance build_spectral_variance(const WavenumberBasis &tx_basis, const WavenumberBasis &rx_basis);

    // Mean transmit variance σ̂_s² = (1/n_s) Σ_j tx_var[j]
    double average_tx_variance(const SpectralVariance &sv);
}
