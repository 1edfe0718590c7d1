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

#include "hmimo/spectral.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hmimo
{
    namespace
    {
        struct Box
        {
            double x0, x1, y0, y1;
        };

        // Parameter interval [t0, t1] of the ray t·(c, s), t ≥ 0, inside the box. Empty if t1 <= t0.
        std::pair<double, double> ray_box(const Box &b, double c, double s) noexcept
        {
            double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
            auto slab = [&](double lo, double hi, double d)
            {
                if (std::abs(d) < 1e-300)
                {
                    if (lo > 0.0 || hi < 0.0)
                        t1 = -1.0;
                    return;
                }
                double a = lo / d, e = hi / d;
                if (a > e)
                    std::swap(a, e);
                t0 = std::max(t0, a);
                t1 = std::min(t1, e);
            };
            slab(b.x0, b.x1, c);
            slab(b.y0, b.y1, s);
            return {t0, t1};
        }

        // Radially integrated density along direction θ, in units normalized to κ = 1:
        //   ∫_{t0}^{min(t1,1)} r / √(1 − r²) dr = √(1 − t0²) − √(1 − min(t1,1)²)
        double radial_mass(const Box &b, double theta) noexcept
        {
            auto [t0, t1] = ray_box(b, std::cos(theta), std::sin(theta));
            if (t1 <= t0 || t0 >= 1.0)
                return 0.0;
            t1 = std::min(t1, 1.0);
            return std::sqrt(std::max(0.0, 1.0 - t0 * t0)) - std::sqrt(std::max(0.0, 1.0 - t1 * t1));
        }

        double wrap_angle(double a) noexcept
        {
            a = std::fmod(a, 2.0 * pi);
            return a < 0.0 ? a + 2.0 * pi : a;
        }

        // Angles in [0, 2π) where the radial integrand changes form: box corners and the points where
        // box edges cross the unit circle. Between consecutive breakpoints it is smooth.
        std::vector<double> breakpoints(const Box &b)
        {
            std::vector<double> out{0.0, 2.0 * pi};
            for (double x : {b.x0, b.x1})
                for (double y : {b.y0, b.y1})
                    if (x != 0.0 || y != 0.0)
                        out.push_back(wrap_angle(std::atan2(y, x)));

            auto edge_hits = [&](double fixed, double lo, double hi, bool vertical)
            {
                if (std::abs(fixed) > 1.0)
                    return;
                const double other = std::sqrt(std::max(0.0, 1.0 - fixed * fixed));
                for (double v : {other, -other})
                    if (v >= lo && v <= hi)
                        out.push_back(wrap_angle(vertical ? std::atan2(v, fixed) : std::atan2(fixed, v)));
            };
            edge_hits(b.x0, b.y0, b.y1, true);
            edge_hits(b.x1, b.y0, b.y1, true);
            edge_hits(b.y0, b.x0, b.x1, false);
            edge_hits(b.y1, b.x0, b.x1, false);

            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end(), [](double a, double c)
                                  { return c - a < 1e-15; }),
                      out.end());
            return out;
        }
    }

    double cell_variance(WavenumberIndex index, double aperture_x, double aperture_y)
    {
        if (!(aperture_x > 0.0) || !(aperture_y > 0.0))
            throw ConfigError("apertures must be positive");

        // Cell in wavenumber coordinates normalized by κ; one lattice step is λ/L
        const double hx = 1.0 / aperture_x, hy = 1.0 / aperture_y;
        const Box box{(index.x - 0.5) * hx, (index.x + 0.5) * hx, (index.y - 0.5) * hy, (index.y + 0.5) * hy};

        // Nearest box point to the origin outside the unit disk → no propagating power
        const double nx = std::clamp(0.0, box.x0, box.x1);
        const double ny = std::clamp(0.0, box.y0, box.y1);
        if (nx * nx + ny * ny >= 1.0)
            return 0.0;

        const auto bps = breakpoints(box);
        boost::math::quadrature::tanh_sinh<double> integrator;
        const auto f = [&](double theta)
        { return radial_mass(box, theta); };

        double total = 0.0;
        for (std::size_t k = 0; k + 1 < bps.size(); ++k)
        {
            const double a = bps[k], b = bps[k + 1];
            if (b - a < 1e-15)
                continue;
            // Skip arcs that miss the cell entirely (cheap midpoint test is exact: the integrand is
            // either identically zero or positive on the whole arc between breakpoints)
            if (radial_mass(box, 0.5 * (a + b)) == 0.0)
                continue;
            double err = 0.0;
            total += integrator.integrate(f, a, b, 1e-12, &err);
        }
        return total / (2.0 * pi);
    }

    RVector cell_variances(const WavenumberBasis &basis)
    {
        const double lx = basis.geometry.aperture_x();
        const double ly = basis.geometry.aperture_y();
        const auto n = std::ptrdiff_t(basis.indices.size());
        RVector out(n);

#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < n; ++k)
            out[k] = cell_variance(basis.indices[std::size_t(k)], lx, ly);
        return out;
    }

    namespace
    {
        RVector normalized(RVector v, const char *side)
        {
            double sum = 0.0;
            for (double x : v)
                sum += x;
            if (!(sum > 0.0))
            {
                std::ostringstream msg;
                msg << side << " spectral variances carry no power";
                throw DegenerateChannelError(msg.str());
            }
            return v / sum;
        }
    }

    SpectralVariance build_spectral_variance(const WavenumberBasis &tx_basis, const WavenumberBasis &rx_basis)
    {
        SpectralVariance sv;
        sv.tx_elements = tx_basis.element_count();
        sv.rx_elements = rx_basis.element_count();
        sv.tx_var = normalized(cell_variances(tx_basis), "transmit");
        sv.rx_var = normalized(cell_variances(rx_basis), "receive");

        const double gain = double(sv.rx_elements) * double(sv.tx_elements);
        sv.sigma_matrix = ((gain * sv.rx_var) * sv.tx_var.transpose()).cwiseSqrt();
        return sv;
    }

    double average_tx_variance(const SpectralVariance &sv)
    {
        if (sv.tx_var.size() == 0)
            throw ConfigError("empty transmit variance vector");
        return sv.tx_var.sum() / double(sv.tx_var.size());
    }
}
