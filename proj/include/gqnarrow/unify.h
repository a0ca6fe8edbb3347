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

#ifndef GQNARROW_UNIFY_H_
#define GQNARROW_UNIFY_H_

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "gqnarrow/term.h"

namespace gqn {

struct Equation {
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

using EquationSet = std::vector<Equation>;

std::string to_string(const EquationSet& equations);

enum class UnifyFailure {
  kClash,   // distinct function symbols (or arities) meet
  kOccurs,  // x = t with x occurring properly in t
};

std::string_view to_string(UnifyFailure failure);

using MguResult = std::variant<Substitution, UnifyFailure>;

// Most general unifier of all equations, by transformation of the equation
// multiset with an eager occurs check. The result is idempotent and its
// domain is contained in V(C). Variable/variable equations bind the younger
// variable (larger index, then larger name) to the older one, so the result
// does not depend on the orientation or order of the equations.
MguResult mgu(const EquationSet& equations);
MguResult mgu(const Term& s, const Term& t);

inline bool succeeded(const MguResult& r) { return std::holds_alternative<Substitution>(r); }

bool unifiable(const EquationSet& equations);

// One-way matching: bindings b for the variables of `pattern` with
// pattern b == subject. Variables of `subject` are treated as constants.
std::optional<Bindings> match(const Term& pattern, const Term& subject);

}  // namespace gqn

#endif  // GQNARROW_UNIFY_H_
