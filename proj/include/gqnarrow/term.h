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

#ifndef GQNARROW_TERM_H_
#define GQNARROW_TERM_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gqnarrow/cbe.h"
#include "gqnarrow/quantale.h"

namespace gqn {

// Reserved symbols of the extended signature.
inline constexpr std::string_view kEqSymbol = "=?";
inline constexpr std::string_view kTrueSymbol = "true";

// A variable. Index 0 is the user-facing namespace; fresh variants use
// indices issued by a FreshVariables counter.
struct Var {
  std::string name;
  int index = 0;

  std::string to_string() const;
  friend auto operator<=>(const Var&, const Var&) = default;
  friend bool operator==(const Var&, const Var&) = default;
};

// Immutable first-order term. Copies share structure.
class Term {
 public:
  static Term var(Var v);
  static Term var(std::string name, int index = 0);
  static Term app(std::string symbol, std::vector<Term> args = {});

  bool is_var() const;
  const Var& as_var() const;
  const std::string& symbol() const;  // empty for variables
  std::span<const Term> args() const;
  std::size_t arity() const { return args().size(); }

  std::size_t hash() const;
  std::size_t size() const;   // number of nodes
  std::size_t depth() const;  // a constant or variable has depth 1
  bool is_ground() const;

  // f(t1,...,tn); constants bare; fresh variables as name_index.
  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// A position: 1-based child indices from the root. The root is the empty
// sequence, printed as `^`.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<int> steps);
  static Position root() { return Position(); }
  static Position parse(std::string_view text);

  bool is_root() const { return steps_.empty(); }
  const std::vector<int>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }

  Position child(int index) const;
  Position concat(const Position& suffix) const;
  // p.is_prefix_of(q) iff p is a (not necessarily proper) prefix of q.
  bool is_prefix_of(const Position& other) const;

  std::string to_string() const;

  friend auto operator<=>(const Position&, const Position&) = default;
  friend bool operator==(const Position&, const Position&) = default;

 private:
  std::vector<int> steps_;
};

// All positions / non-variable positions / variable positions, preorder.
std::vector<Position> positions(const Term& t);
std::vector<Position> fun_positions(const Term& t);
std::vector<Position> var_positions(const Term& t);

bool is_valid_position(const Term& t, const Position& p);
// Both throw TermError on an invalid position.
Term subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& s);

std::set<Var> vars(const Term& t);
// Variables in order of first occurrence (preorder), without repetition.
std::vector<Var> vars_in_order(const Term& t);
bool occurs(const Var& x, const Term& t);
bool is_linear(const Term& t);

// Graded signature: each symbol has a modal arity, one CBE per argument.
class Signature {
 public:
  explicit Signature(QuantaleKind kind) : kind_(kind) {}

  QuantaleKind kind() const { return kind_; }

  // Throws TermError on redeclaration or reserved names, QuantaleError on an
  // inadmissible CBE.
  void declare(const std::string& symbol, std::vector<Cbe> arity);

  bool contains(const std::string& symbol) const;
  // Throws TermError for unknown symbols.
  const std::vector<Cbe>& arity(const std::string& symbol) const;
  const std::map<std::string, std::vector<Cbe>>& symbols() const { return symbols_; }

  // Adds `=?` : (id, id) and `true`. Throws RuleError if already extended.
  Signature extended() const;
  bool is_extended() const;

  // Throws TermError if `t` uses unknown symbols or wrong arities.
  void check_term(const Term& t) const;

 private:
  QuantaleKind kind_;
  std::map<std::string, std::vector<Cbe>> symbols_;
};

// Grade of position p in t: id at the root, phi_i o grade(p', t_i) below.
// Normalized. Throws TermError for an invalid position.
Cbe grade_of_position(const Signature& sig, const Term& t, const Position& p);
// const if x does not occur in t, otherwise the tensor of the grades of all
// occurrences of x. Normalized.
Cbe grade_of_var(const Signature& sig, const Term& t, const Var& x);

using Bindings = std::map<Var, Term>;

// Applies a raw variable map in parallel (one pass, no iteration). Used for
// matchers, which need not be idempotent.
Term apply_bindings(const Term& t, const Bindings& bindings);

// An idempotent substitution with finite domain. Identity bindings are
// dropped; construction rejects non-idempotent maps.
class Substitution {
 public:
  Substitution() = default;  // the identity
  // Throws SubstitutionError if the map is not idempotent.
  static Substitution from_bindings(Bindings bindings);

  bool is_identity() const { return bindings_.empty(); }
  const Bindings& bindings() const { return bindings_; }
  const Term* lookup(const Var& x) const;
  std::set<Var> domain() const;
  std::set<Var> range_vars() const;

  Substitution restrict_to(const std::set<Var>& keep) const;

  // {x -> S(Z), y -> a}; the identity prints as {}.
  std::string to_string() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  explicit Substitution(Bindings b) : bindings_(std::move(b)) {}
  Bindings bindings_;
};

Term apply_subst(const Term& t, const Substitution& sigma);
// sigma rho: t(sigma rho) = (t sigma) rho. Throws SubstitutionError if the
// result is not idempotent.
Substitution compose_subst(const Substitution& sigma, const Substitution& rho);

// Issues fresh variable indices. One counter per search run.
class FreshVariables {
 public:
  explicit FreshVariables(int first = 1) : next_(first) {}
  int issue() { return next_++; }
  int peek() const { return next_; }

 private:
  int next_;
};

// Renames every variable x of t to (x.name, index) with a newly issued index.
Term fresh_variant(const Term& t, FreshVariables& fresh);
// Renames with a caller-chosen index; used when replaying recorded traces.
Term rename_vars(const Term& t, int index);

}  // namespace gqn

template <>
struct std::hash<gqn::Term> {
  std::size_t operator()(const gqn::Term& t) const { return t.hash(); }
};

#endif  // GQNARROW_TERM_H_
