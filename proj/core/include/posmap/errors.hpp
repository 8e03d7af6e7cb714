// Copyright 2026 The posmap authors
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

#ifndef POSMAP_ERRORS_HPP
#define POSMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace posmap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape or factor-dimension inconsistency in an argument.
struct DimensionError : Error {
  using Error::Error;
};

// Input failed the fixed 1e-10 max-entry Hermiticity gate.
struct NotHermitian : Error {
  using Error::Error;
};

struct NotPSD : Error {
  using Error::Error;
};

struct NotCP : Error {
  using Error::Error;
};

struct NotAState : Error {
  using Error::Error;
};

struct NotAbsolutelyContinuous : Error {
  using Error::Error;
};

// Malformed or non-conforming input file.
struct ParseError : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

// Two routes that must agree produced different verdicts; always a bug.
struct InternalConsistencyError : Error {
  using Error::Error;
};

}  // namespace posmap

#endif  // POSMAP_ERRORS_HPP
