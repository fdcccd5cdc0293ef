// Copyright 2026 The fewbody Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace fewbody {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad ranges, wrong shapes, violated preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operand sizes do not agree (qubit counts, factor counts, vector lengths).
class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A computation finished but its result failed a residual or fidelity gate.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fewbody
