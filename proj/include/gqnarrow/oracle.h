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

#ifndef GQNARROW_ORACLE_H_
#define GQNARROW_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqnarrow/generator.h"
#include "gqnarrow/quantale.h"
#include "gqnarrow/rewrite.h"
#include "gqnarrow/term.h"

namespace gqn {

struct OracleBounds {
  std::size_t max_depth = 10;      // term depth of graph nodes
  std::size_t max_nodes = 100000;  // discovered terms per query
  // Ground terms substituted for variables: extra lhs variables on reverse
  // steps, and remaining variables of solutions under verification.
  std::vector<Term> pool;
};

// One edge of the symmetric ground rewrite graph.
struct OracleEdge {
  Term source;
  Term target;
  Position position;
  std::size_t rule = 0;
  bool forward = true;  // false: the reverse of a rewrite target -> source
  Degree degree;
};

struct Conversion {
  Degree degree;
  std::vector<OracleEdge> path;
};

struct OracleOutcome {
  std::optional<Conversion> conversion;
  // Join of the degrees of all paths cut off by the bounds; absent when the
  // search was not truncated. No conversion outside the bounds is better.
  std::optional<Degree> cut_bound;
};

// Edges leaving a ground term. Step degrees of edges dropped by the depth
// bound, or standing for unexplored instantiations of extra variables, are
// appended to `cut` when given.
std::vector<OracleEdge> ground_edges(const GradedTrs& trs, const Term& s,
                                     const OracleBounds& bounds,
                                     std::vector<Degree>* cut = nullptr);

// Best accumulated degree over conversions between ground t and s.
// Throws QuantaleError for partially ordered quantales, TermError for
// non-ground input.
OracleOutcome best_conversion_degree(const GradedTrs& trs, const Term& t, const Term& s,
                                     const OracleBounds& bounds);

enum class Verdict { kConfirmed, kInconclusive, kRefuted };
std::string_view to_string(Verdict verdict);

struct GroundCheck {
  Bindings grounding;
  OracleOutcome outcome;
  Verdict verdict;
};

struct Verification {
  Verdict verdict = Verdict::kConfirmed;
  std::vector<GroundCheck> checks;
  std::string to_string() const;
};

// Checks every grounding of the variables left in t sigma, s sigma over
// bounds.pool (sampled when there are more than `max_groundings`).
Verification verify_solution(const GradedTrs& trs, const Term& t, const Term& s,
                             const Substitution& sigma, const Degree& degree,
                             const OracleBounds& bounds, std::size_t max_groundings = 64,
                             std::uint64_t seed = 1);

struct RankedUnifier {
  Substitution sigma;
  Degree degree;
  bool bounded = false;  // the search was truncated
};

// All maps of the problem variables into `pool`, ranked by best conversion
// degree. Maps without a conversion inside the bounds are left out.
std::vector<RankedUnifier> enumerate_best_unifiers(const GradedTrs& trs, const Term& t,
                                                   const Term& s, const std::vector<Term>& pool,
                                                   const OracleBounds& bounds);

struct ProbeFinding {
  GradedTrs trs;
  Term lhs;
  Term rhs;
  Substitution sigma;
  Degree ordinary_degree;
  std::optional<Degree> basic_degree;  // best calculus degree for sigma
  std::string to_string() const;
};

struct ProbeReport {
  std::size_t trials = 0;
  std::vector<ProbeFinding> findings;
};

// Solutions reached by ordinary narrowing over R' that the calculus misses,
// comparing substitutions restricted to V(t, s) up to renaming.
std::vector<ProbeFinding> probe_system(const GradedTrs& trs, const Term& t, const Term& s,
                                       std::size_t max_steps);

ProbeReport conjecture_probe(const GeneratorConfig& config, std::size_t trials,
                             std::size_t max_steps = 4, std::uint64_t seed = 1);

}  // namespace gqn

#endif  // GQNARROW_ORACLE_H_
