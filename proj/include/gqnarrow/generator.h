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

#ifndef GQNARROW_GENERATOR_H_
#define GQNARROW_GENERATOR_H_

#include <cstddef>
#include <random>

#include "gqnarrow/quantale.h"
#include "gqnarrow/rewrite.h"
#include "gqnarrow/term.h"

namespace gqn {

// Shape of randomly generated rewrite systems and problems.
struct GeneratorConfig {
  QuantaleKind kind = QuantaleKind::kLawvere;
  std::size_t max_rules = 4;
  // Function symbols including constants; at least one constant is always
  // present.
  std::size_t max_symbols = 3;
  std::size_t max_arity = 2;
  std::size_t max_term_depth = 2;
  // Use arities other than id on some argument slots.
  bool graded_arities = true;
  bool require_right_linear = false;
  bool require_right_ground = false;
  bool require_balanced = false;
  bool linear_problem = true;
};

struct GeneratedProblem {
  GradedTrs trs;
  Term lhs;
  Term rhs;
};

// Draws until the gates in `config` hold. Throws RuleError if the gates
// cannot be met after many attempts.
GeneratedProblem generate_problem(const GeneratorConfig& config, std::mt19937_64& rng);

// Uniform choice among a small set of degrees of `kind`, including unit.
Degree random_degree(QuantaleKind kind, std::mt19937_64& rng);

// Random admissible CBE in normal form.
Cbe random_cbe(QuantaleKind kind, std::mt19937_64& rng);

// Random term over the non-reserved symbols of `sig`, drawing variables
// from `variables` (none if empty).
Term random_term(const Signature& sig, const std::vector<Var>& variables, std::size_t max_depth,
                 std::mt19937_64& rng);

// All ground terms of `sig` up to `max_depth`, capped at `limit` entries.
std::vector<Term> ground_terms(const Signature& sig, std::size_t max_depth, std::size_t limit);

}  // namespace gqn

#endif  // GQNARROW_GENERATOR_H_
