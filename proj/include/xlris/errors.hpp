// SPDX-License-Identifier: Apache-2.0
//
// xlris - rate analysis and phase-shift design for XL-RIS-aided massive MIMO
// Copyright (C) 2026 The xlris authors
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

#ifndef XLRIS_ERRORS_HPP
#define XLRIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xlris {

// Argument validation uses std::invalid_argument directly.

/// Raised when a numerical routine cannot produce a trustworthy result
/// (indefinite correlation matrix, non-finite objective, ...).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised while parsing or validating an experiment description.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string &what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace xlris

#endif
