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

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hmimo
{
    using cdouble = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RMatrix = Eigen::MatrixXd;
    using RVector = Eigen::VectorXd;

    inline constexpr double pi = 3.141592653589793238462643383279502884;

    // Error categories double as the CLI's machine-readable failure classes
    enum class ErrorCategory
    {
        config,     // invalid or infeasible configuration
        domain,     // argument outside the mathematical domain of an operation
        validation, // input violates a documented invariant (e.g. non-unit phase)
        singular,   // rank-deficient or ill-conditioned linear system
        degenerate, // zero channel row or similar degenerate input
        io          // file system / format failures
    };

    std::string_view to_string(ErrorCategory c) noexcept;

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCategory category, const std::string &what)
            : std::runtime_error(what), category_(category) {}
        ErrorCategory category() const noexcept { return category_; }

    private:
        ErrorCategory category_;
    };

    struct ConfigError : Error
    {
        explicit ConfigError(const std::string &w) : Error(ErrorCategory::config, w) {}
    };
    struct DomainError : Error
    {
        explicit DomainError(const std::string &w) : Error(ErrorCategory::domain, w) {}
    };
    struct ValidationError : Error
    {
        explicit ValidationError(const std::string &w) : Error(ErrorCategory::validation, w) {}
    };
    struct SingularError : Error
    {
        explicit SingularError(const std::string &w) : Error(ErrorCategory::singular, w) {}
    };
    struct DegenerateChannelError : Error
    {
        explicit DegenerateChannelError(const std::string &w) : Error(ErrorCategory::degenerate, w) {}
    };
    struct IoError : Error
    {
        explicit IoError(const std::string &w) : Error(ErrorCategory::io, w) {}
    };

    inline std::string_view to_string(ErrorCategory c) noexcept
    {
        switch (c)
        {
        case ErrorCategory::config: return "config";
        case ErrorCategory::domain: return "domain";
        case ErrorCategory::validation: return "validation";
        case ErrorCategory::singular: return "singular";
        case ErrorCategory::degenerate: return "degenerate";
        case ErrorCategory::io: return "io";
        }
        return "unknown";
    }
}
