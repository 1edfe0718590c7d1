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

#include <cmath>
#include <cstddef>

namespace hmimo
{
    // Neumaier-compensated running sum. Monte Carlo reductions feed values in trial order through this,
    // so results do not depend on how trials were scheduled.
    class CompensatedSum
    {
    public:
        void add(double x) noexcept
        {
            const double t = sum_ + x;
            if (std::abs(sum_) >= std::abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
            sum_ = t;
            ++count_;
        }
        double value() const noexcept { return sum_ + comp_; }
        std::size_t count() const noexcept { return count_; }

    private:
        double sum_ = 0.0;
        double comp_ = 0.0;
        std::size_t count_ = 0;
    };

    // Mean and standard error of the mean from compensated first and second moments
    class MeanAccumulator
    {
    public:
        void add(double x) noexcept
        {
            first_.add(x);
            second_.add(x * x);
        }
        std::size_t count() const noexcept { return first_.count(); }
        double mean() const noexcept { return count() ? first_.value() / double(count()) : 0.0; }
        double std_error() const noexcept
        {
            const auto n = double(count());
            if (count() < 2)
                return 0.0;
            const double m = mean();
            const double var = (second_.value() - n * m * m) / (n - 1.0);
            return var > 0.0 ? std::sqrt(var / n) : 0.0;
        }

    private:
        CompensatedSum first_, second_;
    };
}
