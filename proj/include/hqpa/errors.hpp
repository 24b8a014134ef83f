// Copyright 2026 The hqpa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HQPA_ERRORS_HPP
#define HQPA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hqpa {

/// Non-finite or out-of-range physical parameter.
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition was violated (non-Hermitian input, unnormalized
/// state, non-unitary gate, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Grids, trajectories or pair sets of inconsistent length.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Two eigenvalues of the reference Hamiltonian coincide, so level labels are undefined.
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The control field left the finite range during optimization.
class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(std::size_t iteration, const std::string &what)
        : std::runtime_error(what), iteration_(iteration) {}
    std::size_t iteration() const noexcept { return iteration_; }

  private:
    std::size_t iteration_;
};

/// Malformed CSV input.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration file could not be parsed or a value is out of range.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string &what, std::size_t line = 0, std::string key = {})
        : std::runtime_error(what), line_(line), key_(std::move(key)) {}
    std::size_t line() const noexcept { return line_; }
    const std::string &key() const noexcept { return key_; }

  private:
    std::size_t line_;
    std::string key_;
};

}  // namespace hqpa

#endif  // HQPA_ERRORS_HPP
