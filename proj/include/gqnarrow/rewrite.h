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

#ifndef GQNARROW_REWRITE_H_
#define GQNARROW_REWRITE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gqnarrow/quantale.h"
#include "gqnarrow/term.h"

namespace gqn {

// degree |- lhs -> rhs
struct RewriteRule {
  Degree degree;
  Term lhs;
  Term rhs;

  std::string to_string() const;
};

// Renames both sides of the rule with one freshly issued index.
RewriteRule fresh_variant(const RewriteRule& rule, FreshVariables& fresh);
RewriteRule rename_rule(const RewriteRule& rule, int index);

struct RuleAttributes {
  bool left_linear = false;
  bool right_linear = false;
  bool left_ground = false;
  bool right_ground = false;
  bool balanced = false;
  // Variables whose grades differ between the two sides.
  std::vector<Var> unbalanced_vars;
};

struct TrsAttributes {
  std::vector<RuleAttributes> rules;
  bool left_linear = true;
  bool right_linear = true;
  bool left_ground = true;
  bool right_ground = true;
  bool balanced = true;
  bool declared_confluent = false;
};

// A graded quantitative term rewriting system.
class GradedTrs {
 public:
  // Throws RuleError when a rule violates lhs not a variable or
  // V(rhs) subset of V(lhs), or uses a degree from another quantale;
  // TermError for ill-formed terms.
  GradedTrs(Signature signature, std::vector<RewriteRule> rules, bool declared_confluent = false);

  QuantaleKind kind() const { return signature_.kind(); }
  const Signature& signature() const { return signature_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  const TrsAttributes& attributes() const { return attributes_; }
  bool declared_confluent() const { return attributes_.declared_confluent; }
  bool is_extended() const { return signature_.is_extended(); }

 private:
  Signature signature_;
  std::vector<RewriteRule> rules_;
  TrsAttributes attributes_;
};

RuleAttributes rule_attributes(const Signature& sig, const RewriteRule& rule);
// Attribute report; mandatory variable conditions were enforced on
// construction, everything here is informational.
TrsAttributes check_trs(const GradedTrs& trs);

// R' = R plus kappa |- x =? x -> true over the extended signature.
// Throws RuleError if `trs` is already extended.
GradedTrs extend_trs(const GradedTrs& trs);

// A single rewrite step s ->_{degree} result at `position`.
struct RewriteStep {
  Position position;
  std::size_t rule = 0;  // index into trs.rules()
  Bindings matcher;
  Degree degree;
  Term result;
};

// Every single-step rewrite of s. Steps are ordered by position (preorder)
// then rule index.
std::vector<RewriteStep> rewrite_steps(const GradedTrs& trs, const Term& s);
// The steps of rewrite_steps whose redex has no redex strictly below it.
std::vector<RewriteStep> innermost_rewrite_steps(const GradedTrs& trs, const Term& s);

struct TraceStep {
  Term source;
  RewriteStep step;
};

using RewriteTrace = std::vector<TraceStep>;

// `p: redex -> contractum  @ degree`, one line per step.
std::string render_trace(const RewriteTrace& trace);

struct ReachedTerm {
  Term term;
  // The maximal accumulated degrees found (one for total orders), each with
  // a witnessing trace.
  std::vector<Degree> degrees;
  std::vector<RewriteTrace> traces;
};

struct RewriteSearchOptions {
  std::size_t max_steps = 8;
  std::optional<Degree> threshold;  // prune when NOT(degree >= threshold)
  bool innermost = false;
  std::size_t max_terms = 200000;
};

// Terms reachable within max_steps, sorted by term.
std::vector<ReachedTerm> rewrite_search(const GradedTrs& trs, const Term& t,
                                        const RewriteSearchOptions& options);

struct Joinability {
  Degree degree;
  RewriteTrace trace;  // over R', ending in `true`
};

// Best degree of t =? s ->* true over R' within max_steps.
std::optional<Joinability> joinable(const GradedTrs& trs, const Term& t, const Term& s,
                                    std::size_t max_steps);

}  // namespace gqn

#endif  // GQNARROW_REWRITE_H_
