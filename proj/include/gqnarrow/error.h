// Copyright 2026 The gqnarrow Authors.
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

#ifndef GQNARROW_ERROR_H_
#define GQNARROW_ERROR_H_

#include <stdexcept>
#include <string>

namespace gqn {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands from different quantales, values outside the carrier, CBEs outside
// a quantale's admitted fragment.
class QuantaleError : public Error {
 public:
  using Error::Error;
};

// Malformed terms: unknown symbols, arity mismatches, invalid positions.
class TermError : public Error {
 public:
  using Error::Error;
};

// Substitutions that would break idempotency.
class SubstitutionError : public Error {
 public:
  using Error::Error;
};

// Rules violating l not a variable / V(r) subset of V(l), reserved symbols.
class RuleError : public Error {
 public:
  using Error::Error;
};

// Non-basic narrowing steps and similar misuse of derivation bookkeeping.
class DerivationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gqn

#endif  // GQNARROW_ERROR_H_
