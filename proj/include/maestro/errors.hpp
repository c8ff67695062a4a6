// Copyright 2026 The Maestro Authors

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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maestro {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unsupported QASM input. Carries a 1-based source position.
class ParseError : public Error {
  public:
    enum class Kind { Syntax, UnsupportedGate, UnsupportedFeature, IndexOutOfBounds, DuplicateQubit };

    ParseError(Kind kind, const std::string &msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          kind_(kind), line_(line), column_(column) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
};

/// A circuit or instruction violates a structural invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A backend could not execute the request (capacity, gate support, numerics).
class BackendError : public Error {
  public:
    using Error::Error;
};

/// Raised by run() when the circuit measures nothing, so no counts can exist.
class NoMeasurementsError : public BackendError {
  public:
    NoMeasurementsError() : BackendError("circuit has no measurements; counts would be empty") {}
};

/// The bond-dimension doubling loop hit its cap without reaching the fidelity threshold.
class InfeasibleAtCapError : public BackendError {
  public:
    using BackendError::BackendError;
};

/// Missing, malformed or unusable calibration data.
class CalibrationError : public Error {
  public:
    using Error::Error;
};

} // namespace maestro
