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

#ifndef GQNARROW_NARROW_H_
#define GQNARROW_NARROW_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gqnarrow/quantale.h"
#include "gqnarrow/rewrite.h"
#include "gqnarrow/term.h"
#include "gqnarrow/unify.h"

namespace gqn {

// ---------------------------------------------------------------------------
// Ordinary graded narrowing.

struct NarrowStep {
  Position position;      // a non-variable position of the source term
  std::size_t rule = 0;   // index into trs.rules()
  int variant_index = 0;  // fresh index the rule variant was renamed with
  RewriteRule variant;
  Substitution mgu;
  Degree degree;          // grade of the position applied to the rule degree
  Term result;            // (s[r]_p) mgu
};

// Every narrowing step from t: each p in Pos_F(t) and each rule whose fresh
// variant's lhs unifies with t|_p. One variant is issued per (position,
// rule) attempt.
std::vector<NarrowStep> narrowing_steps(const GradedTrs& trs, const Term& t,
                                        FreshVariables& fresh);

struct NarrowDerivation {
  Term start;
  std::vector<NarrowStep> steps;
  Term end;
  Substitution sigma;  // sigma_1 sigma_2 ... sigma_n
  Degree degree;       // tensor of the step degrees
};

struct NarrowSearchOptions {
  std::size_t max_steps = 4;
  std::optional<Degree> threshold;  // prune when NOT(degree >= threshold)
  bool basic_only = false;
  std::size_t max_derivations = 500000;
};

// All derivations from t of length 0..max_steps (prefixes included), in
// breadth-first order.
std::vector<NarrowDerivation> narrowing_derivations(const GradedTrs& trs, const Term& t,
                                                    const NarrowSearchOptions& options,
                                                    FreshVariables& fresh);

// The derivations of length exactly n. n = 0 yields (t, Id, kappa).
std::vector<NarrowDerivation> iterate_narrowing(const GradedTrs& trs, const Term& t,
                                                std::size_t n, FreshVariables& fresh);

// ---------------------------------------------------------------------------
// Basic positions.

using BasicPositionSet = std::set<Position>;

// B' = {q in B | p not a prefix of q} U {p.q | q in Pos_F(rhs)}.
// Throws DerivationError when p is not in B (the step is not basic).
BasicPositionSet basic_update(const BasicPositionSet& basic, const Position& p, const Term& rhs);

// B_1 .. B_{n+1} for the derivation (B_1 = Pos_F(start)). Positions of
// non-basic steps are still folded in, so the sets are defined throughout.
std::vector<BasicPositionSet> basic_positions(const NarrowDerivation& derivation);
bool is_basic(const NarrowDerivation& derivation);

// ---------------------------------------------------------------------------
// The BQNarrow calculus.

enum class BqRule { kLP, kSU, kCla, kCon };
std::string_view to_string(BqRule rule);

struct BqTraceEntry {
  BqRule rule;
  Position position;      // LP only
  std::size_t rule_index = 0;  // LP only
  int variant_index = 0;  // LP only
  Degree step_degree;
};

struct BqTraceNode;

// e; C; sigma; delta, plus the applied-rule log.
struct BqConfig {
  Term e;
  EquationSet constraints;
  Substitution sigma;
  Degree degree;
  std::shared_ptr<const BqTraceNode> trace;

  bool solved() const;  // e = true and C empty
  std::string to_string() const;
};

struct BqTraceNode {
  BqTraceEntry entry;
  BqConfig config;  // the configuration the rule produced
  std::shared_ptr<const BqTraceNode> parent;
};

// Trace entries from the initial configuration onward.
std::vector<const BqTraceNode*> trace_of(const BqConfig& config);

// t =? s; {}; Id; kappa.
BqConfig initial_config(const Term& t, const Term& s, QuantaleKind kind);

struct BqSuccessor {
  BqRule rule;
  std::optional<BqConfig> config;  // nullopt: FAIL (Cla)
};

// Every applicable rule instance. LP ranges over non-variable positions of
// e and all rules (a fresh variant each); SU when C is nonempty and
// unifiable; Cla when it is not; Con when e is not `true`. `trs` is the
// unextended system; grades inside e use the extended signature.
std::vector<BqSuccessor> bq_step(const BqConfig& config, const GradedTrs& trs,
                                 FreshVariables& fresh, bool head_prefilter = false);

// Single rule applications, used by bq_step and for replaying traces.
std::optional<BqConfig> apply_lp(const BqConfig& config, const GradedTrs& trs,
                                 const Signature& extended, const Position& p,
                                 std::size_t rule_index, int variant_index);
// SU or Cla: nullopt means FAIL. Requires nonempty C.
std::optional<BqConfig> apply_su(const BqConfig& config);
std::optional<BqConfig> apply_con(const BqConfig& config);

// One line per step: `LP 1.1 r2 v7  ==> e ; C ; sigma ; delta`.
std::string render_bq_trace(const BqConfig& config);

// Re-runs the rule applications named by a rendered trace from the initial
// configuration of t =? s. Throws DerivationError if a line does not apply.
BqConfig replay_bq_trace(const GradedTrs& trs, const Term& t, const Term& s,
                         const std::string& rendered);

// ---------------------------------------------------------------------------
// Solving quantitative unification problems.

enum class Strategy { kEagerSu, kLazy };
enum class SearchOrder { kBfs, kIddfs, kBestFirst };

struct SolveOptions {
  Strategy strategy = Strategy::kEagerSu;
  SearchOrder order = SearchOrder::kBfs;
  std::optional<Degree> threshold;
  // Bound on LP + Con applications along a branch.
  std::size_t max_steps = 12;
  std::size_t max_solutions = static_cast<std::size_t>(-1);
  std::size_t max_configs = 2000000;
  // Skip configurations equal up to renaming of fresh variables to one
  // already seen with at least as good a degree and no more steps.
  bool deduplicate = true;
  bool head_prefilter = false;
};

struct Solution {
  Substitution sigma;  // restricted to V(t, s), fresh variables renumbered
  Degree degree;
  BqConfig final_config;
  // Another solution with the same substitution has a strictly better degree.
  bool dominated = false;

  std::string to_string() const;  // solution {x -> S(Z)} degree 1
};

enum class SearchStatus {
  kExhausted,      // every branch ran to completion or failure
  kStepLimit,      // some branch was cut by max_steps
  kConfigLimit,    // max_configs reached
  kSolutionLimit,  // max_solutions reached
};

std::string_view to_string(SearchStatus status);

struct SolveResult {
  // Sorted by degree (best first), then by rendering.
  std::vector<Solution> solutions;
  SearchStatus status = SearchStatus::kExhausted;
  std::size_t configs_explored = 0;
};

// Explores derivations from t =? s; {}; Id; kappa and reports every
// configuration true; {}; sigma; delta reached with delta >= threshold.
// `on_solution` sees solutions in discovery order; returning false stops.
// best-first requires a totally ordered quantale (QuantaleError otherwise).
SolveResult solve(const GradedTrs& trs, const Term& t, const Term& s, const SolveOptions& options,
                  const std::function<bool(const Solution&)>& on_solution = {});

// Canonical text of sigma restricted to `vars`, variables outside `vars`
// renumbered by first occurrence. Equal for substitutions that agree on
// `vars` up to renaming of the other variables.
std::string canonical_substitution(const Substitution& sigma, const std::vector<Var>& vars);

// Maps a basic narrowing derivation to an eager-su calculus derivation (LP
// then SU for every step), starting from e = derivation.start. Returns the
// configurations after each rule application. Throws DerivationError for a
// non-basic derivation.
std::vector<BqConfig> derivation_to_calculus(const GradedTrs& trs,
                                             const NarrowDerivation& derivation);

}  // namespace gqn

#endif  // GQNARROW_NARROW_H_
