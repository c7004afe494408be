// Copyright 2026 The noisyqec Authors
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

namespace noisyqec {

// Index errors use std::out_of_range; everything else derives from Error.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented invariant (non-Hermitian, duplicate control, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Scalar argument outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bracketed root search found no sign change.
class RootFindError : public Error {
 public:
  using Error::Error;
};

/// Integrator or stochastic stepper produced non-finite values.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Encoder/decoder networks do not implement a consistent correcting code.
class CodeConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Experiment parameters are inconsistent (e.g. storage time shorter than E+D).
class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace noisyqec
