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

#ifndef GQNARROW_QUANTALE_H_
#define GQNARROW_QUANTALE_H_

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gqnarrow/error.h"

namespace gqn {

// The Lawverean quantales supported by the library.
//
//   kind           carrier   order  tensor  unit
//   kBool          {0,1}     <=     and     1
//   kLawvere       [0,inf]   >=     +       0
//   kLawvereMax    [0,inf]   >=     max     0
//   kFuzzyGodel    [0,1]     <=     min     1
//   kFuzzyProduct  [0,1]     <=     *       1
//
// All five are commutative, integral (unit = top), cointegral and nontrivial.
enum class QuantaleKind {
  kBool,
  kLawvere,
  kLawvereMax,
  kFuzzyGodel,
  kFuzzyProduct,
};

// Name used in the text format ("bool", "lawvere", "lawvere-max", ...).
std::string_view quantale_name(QuantaleKind kind);
std::optional<QuantaleKind> quantale_from_name(std::string_view name);

// Whether the order is total. Best-first search and the oracle rely on it.
bool is_totally_ordered(QuantaleKind kind);

// True for the Lawvere family, whose carrier contains an explicit infinity.
bool has_infinity(QuantaleKind kind);

// An element of a quantale, with exact rational arithmetic. Values always
// carry their quantale so that mixed-quantale arithmetic can be rejected.
class Degree {
 public:
  // Throws QuantaleError if `value` lies outside the carrier.
  static Degree of(QuantaleKind kind, const mpq_class& value);
  static Degree of(QuantaleKind kind, long numerator, unsigned long denominator = 1);
  // +inf; Lawvere family only.
  static Degree infinity(QuantaleKind kind);

  static Degree unit(QuantaleKind kind);  // kappa
  static Degree top(QuantaleKind kind);
  static Degree bottom(QuantaleKind kind);

  // Degree literals: naturals, p/q fractions and `inf` for the Lawvere
  // family; fractions in [0,1] for the fuzzy quantales; 0/1 for bool.
  static Degree parse(QuantaleKind kind, std::string_view text);

  QuantaleKind kind() const { return kind_; }
  bool is_infinite() const { return infinite_; }
  // Numeric value; only meaningful when !is_infinite().
  const mpq_class& value() const { return value_; }

  std::string to_string() const;

  friend bool operator==(const Degree& a, const Degree& b);

 private:
  Degree(QuantaleKind kind, bool infinite, mpq_class value)
      : kind_(kind), infinite_(infinite), value_(std::move(value)) {}

  QuantaleKind kind_;
  bool infinite_;
  mpq_class value_;
};

// a (x) b. Throws QuantaleError on mixed operands.
Degree tensor(const Degree& a, const Degree& b);

// a <= b in the quantale order ("b is at least as good as a"). For the
// Lawvere family this is numeric a >= b.
bool leq(const Degree& a, const Degree& b);
inline bool geq(const Degree& a, const Degree& b) { return leq(b, a); }
// Strictly better: a > b in the quantale order.
inline bool better(const Degree& a, const Degree& b) {
  return leq(b, a) && !(a == b);
}

// Binary and finite joins/meets. The empty join is bottom, the empty meet
// is top.
Degree join(const Degree& a, const Degree& b);
Degree meet(const Degree& a, const Degree& b);
Degree join(QuantaleKind kind, std::span<const Degree> values);
Degree meet(QuantaleKind kind, std::span<const Degree> values);

}  // namespace gqn

#endif  // GQNARROW_QUANTALE_H_
