// Copyright 2026 The pqt Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace pqt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, non-Hermitian matrices, bad indices.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// An operation was invoked outside its documented domain, e.g. a
/// single-copy procedure on a collapsing system.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// A measurement outcome with (numerically) zero Born weight was requested.
class ZeroProbabilityError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

/// A finite-shot estimate could not separate the hypotheses it was asked to
/// decide between.
class InsufficientShotsError : public Error {
  public:
    using Error::Error;
};

/// Configuration text failed validation. `field()` names the offending key
/// using a JSON-pointer-like path such as `observables[0]`.
class ValidationError : public Error {
  public:
    ValidationError(std::string field, const std::string &what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    [[nodiscard]] const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

} // namespace pqt
