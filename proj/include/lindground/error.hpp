// Copyright 2026 The lindground Authors
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

namespace lg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree (qubit counts, pairing widths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A dense realization would exceed the configured qubit cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Matrix shape is not a power of two, or not square.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class NoSteadyStateError : public Error {
 public:
  using Error::Error;
};

/// Integration produced non-finite or unphysical values; more substeps needed.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The purity estimate in a ratio estimator came out non-positive.
class IllConditionedRatioError : public Error {
 public:
  using Error::Error;
};

/// The target cannot be of the form L^dagger L in the row/column convention.
class StructuralRejectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace lg
