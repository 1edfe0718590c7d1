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

#include "hmimo/reference.hpp"

namespace hmimo::reference
{
    RVector cell_variances(const WavenumberBasis &basis)
    {
        RVector out(Eigen::Index(basis.indices.size()));
        for (std::size_t k = 0; k < basis.indices.size(); ++k)
            out[Eigen::Index(k)] =
                cell_variance(basis.indices[k], basis.geometry.aperture_x(), basis.geometry.aperture_y());
        return out;
    }

    std::vector<SeResult> monte_carlo_se(const MultiUserLink &link, Scheme scheme, std::span<const double> snr_db,
                                         const MonteCarloOptions &opt)
    {
        check_feasible(link, scheme);
        if (opt.n_trials < 1)
            throw ConfigError("n_trials must be >= 1");

        std::vector<std::vector<RVector>> trials;
        trials.reserve(opt.n_trials);
        for (std::size_t t = 0; t < opt.n_trials; ++t)
            trials.push_back(evaluate_trial(link, scheme, snr_db, opt, t));
        return reduce_trials(trials, link, scheme, snr_db);
    }
}
