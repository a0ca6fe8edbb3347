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

#ifndef GQNARROW_CBE_H_
#define GQNARROW_CBE_H_

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>

#include "gqnarrow/quantale.h"

namespace gqn {

// A change-of-base endofunctor (quantale endomorphism), kept as a symbolic
// expression tree so that grades along term positions can be composed,
// tensored and compared for equality.
//
// Fragments admitted per quantale:
//   bool, fuzzy-godel   id, const
//   lawvere(-max)       id, const, scale(c) with c >= 0 rational
//   fuzzy-product       id, const, pow(n) with n >= 1
// plus closure under compose and tensor.
class Cbe {
 public:
  enum class Op { kId, kConstKappa, kScale, kPow, kCompose, kTensor };

  static Cbe id();
  static Cbe const_kappa();
  static Cbe scale(const mpq_class& factor);
  static Cbe pow(unsigned long exponent);
  // Raw constructors; see cbe_compose/cbe_tensor for the normalizing ones.
  static Cbe compose(const Cbe& outer, const Cbe& inner);
  static Cbe tensor(const Cbe& a, const Cbe& b);

  // Parses the literal forms `id`, `const`, `scale(c)`, `pow(n)`.
  static Cbe parse(std::string_view text);

  Op op() const;
  const mpq_class& factor() const;  // kScale
  unsigned long exponent() const;   // kPow
  Cbe first() const;   // kCompose (outer) / kTensor
  Cbe second() const;  // kCompose (inner) / kTensor

  // Literal syntax; compound nodes render as compose(f,g) / tensor(f,g).
  std::string to_string() const;

  // Structural equality of expression trees. Use cbe_equal for semantic
  // equality within a quantale's fragment.
  friend bool operator==(const Cbe& a, const Cbe& b);

 private:
  struct Node;
  explicit Cbe(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool admissible(const Cbe& f, QuantaleKind kind);
// Throws QuantaleError naming the offending constructor.
void require_admissible(const Cbe& f, QuantaleKind kind);

// Evaluates the expression tree directly: compose(f,g)(a) = f(g(a)),
// tensor(f,g)(a) = f(a) (x) g(a).
Degree cbe_apply(const Cbe& f, const Degree& a);

// Normal forms: const or scale(c), c > 0 (Lawvere family); id or const
// (bool, fuzzy-godel); const or pow(n), n >= 1 (fuzzy-product).
Cbe cbe_normalize(const Cbe& f, QuantaleKind kind);
Cbe cbe_compose(const Cbe& outer, const Cbe& inner, QuantaleKind kind);
Cbe cbe_tensor(const Cbe& a, const Cbe& b, QuantaleKind kind);
bool cbe_equal(const Cbe& a, const Cbe& b, QuantaleKind kind);

}  // namespace gqn

#endif  // GQNARROW_CBE_H_
