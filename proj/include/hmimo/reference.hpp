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

// Serial reference implementations of the OpenMP kernels. They are kept for testing (parallel results
// must match them bit for bit) and as the baseline in the benchmark.

#include "hmimo/rate.hpp"

namespace hmimo::reference
{
    RVector cell_variances(const WavenumberBasis &basis);

    std::vector<SeResult> monte_carlo_se(const MultiUserLink &link, Scheme scheme, std::span<const double> snr_db,
                                         const MonteCarloOptions &opt);
}
