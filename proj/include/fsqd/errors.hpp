// Copyright 2026 The fsqd Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace fsqd {

/// Root of every error the library raises.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input, bad arguments or unreadable files. CLI exit code 1.
class InputError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public InputError {
  public:
    using InputError::InputError;
};

class NormalizationError : public InputError {
  public:
    using InputError::InputError;
};

/// A numerical contract was broken (Hermiticity, norm drift, a bound
/// violation). CLI exit code 2.
class NumericalError : public Error {
  public:
    using Error::Error;
};

class HermiticityError : public NumericalError {
  public:
    HermiticityError(const std::string &what, double deviation, std::size_t row,
                     std::size_t col)
        : NumericalError(what), deviation_(deviation), row_(row), col_(col) {}

    double deviation() const noexcept { return deviation_; }
    /// Zero-based indices of the worst entry.
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

  private:
    double deviation_;
    std::size_t row_;
    std::size_t col_;
};

} // namespace fsqd
