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

#include "gqnarrow/unify.h"

namespace gqn {

std::string to_string(const EquationSet& equations) {
  std::string out = "{";
  for (std::size_t i = 0; i < equations.size(); ++i) {
    if (i > 0) out += ", ";
    out += equations[i].lhs.to_string() + " = " + equations[i].rhs.to_string();
  }
  return out + "}";
}

std::string_view to_string(UnifyFailure failure) {
  return failure == UnifyFailure::kClash ? "clash" : "occurs";
}

namespace {

// Older variables survive as representatives.
bool younger(const Var& a, const Var& b) {
  if (a.index != b.index) return a.index > b.index;
  return a.name > b.name;
}

// Solved part kept fully applied: no variable of the domain occurs in any
// bound term.
void bind_var(Bindings& solved, const Var& x, const Term& t) {
  Bindings single{{x, t}};
  for (auto& [y, u] : solved) u = apply_bindings(u, single);
  solved.emplace(x, t);
}

}  // namespace

MguResult mgu(const EquationSet& equations) {
  std::vector<std::pair<Term, Term>> work;
  work.reserve(equations.size());
  for (auto it = equations.rbegin(); it != equations.rend(); ++it) work.emplace_back(it->lhs, it->rhs);

  Bindings solved;
  while (!work.empty()) {
    auto [s, t] = std::move(work.back());
    work.pop_back();
    s = apply_bindings(s, solved);
    t = apply_bindings(t, solved);
    if (s == t) continue;
    if (!s.is_var() && t.is_var()) std::swap(s, t);
    if (s.is_var()) {
      const Var& x = s.as_var();
      if (t.is_var()) {
        const Var& y = t.as_var();
        if (younger(x, y)) {
          bind_var(solved, x, t);
        } else {
          bind_var(solved, y, s);
        }
        continue;
      }
      if (occurs(x, t)) return UnifyFailure::kOccurs;
      bind_var(solved, x, t);
      continue;
    }
    if (s.symbol() != t.symbol() || s.arity() != t.arity()) return UnifyFailure::kClash;
    for (std::size_t i = s.arity(); i-- > 0;) work.emplace_back(s.args()[i], t.args()[i]);
  }
  return Substitution::from_bindings(std::move(solved));
}

MguResult mgu(const Term& s, const Term& t) { return mgu(EquationSet{{s, t}}); }

bool unifiable(const EquationSet& equations) { return succeeded(mgu(equations)); }

namespace {

bool match_into(const Term& pattern, const Term& subject, Bindings& out) {
  if (pattern.is_var()) {
    auto [it, inserted] = out.emplace(pattern.as_var(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var() || pattern.symbol() != subject.symbol() ||
      pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.args()[i], subject.args()[i], out)) return false;
  }
  return true;
}

}  // namespace

std::optional<Bindings> match(const Term& pattern, const Term& subject) {
  Bindings out;
  if (!match_into(pattern, subject, out)) return std::nullopt;
  return out;
}

}  // namespace gqn
