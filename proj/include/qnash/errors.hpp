// Copyright 2026 The qnash Authors
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

namespace qnash {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (bad index, malformed strategy, invalid
/// generator parameters).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix file or numeric literal.
class ParseError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// The support linear system has no unique solution.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// The support linear system has a solution outside the simplex.
class NegativeWeight : public Error {
 public:
  using Error::Error;
};

/// Support enumeration found two or more distinct equilibria.
class NotUnique : public Error {
 public:
  using Error::Error;
};

/// Swordfish eliminated every candidate; the input has no unique PSNE.
class EmptyCandidates : public Error {
 public:
  using Error::Error;
};

/// The unknown-support loop ran out of support sizes without a verified
/// equilibrium.
class Exhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace qnash
