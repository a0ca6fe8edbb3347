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

// Prints one PASS/FAIL line per acceptance criterion. Degrees are compared
// exactly; the only tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gqnarrow/generator.h"
#include "gqnarrow/narrow.h"
#include "gqnarrow/oracle.h"
#include "gqnarrow/rewrite.h"
#include "test_util.h"

namespace gqn {
namespace {

using testing::load;
using testing::T;
using Clock = std::chrono::steady_clock;

constexpr double kPeanoSeconds = 1.0;
constexpr double kCubicSeconds = 5.0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::vector<Var> problem_vars(const Term& t, const Term& s) {
  std::set<Var> vs = vars(t);
  for (const Var& x : vars(s)) vs.insert(x);
  return {vs.begin(), vs.end()};
}

// "sigma @ degree" for every emitted solution.
std::set<std::string> solution_keys(const SolveResult& r, const std::vector<Var>& vs) {
  std::set<std::string> out;
  for (const Solution& s : r.solutions) {
    out.insert(canonical_substitution(s.sigma, vs) + " @ " + s.degree.to_string());
  }
  return out;
}

std::vector<Term> constants(const Signature& sig) {
  std::vector<Term> out;
  for (const auto& [f, arity] : sig.symbols()) {
    if (arity.empty() && f != "true") out.push_back(Term::app(f));
  }
  return out;
}

Outcome peano() {
  Outcome o;
  const ProblemFile pf = load("peano.gtrs");
  const GradedTrs trs = pf.trs();
  const Problem& p = pf.problems.at(0);
  SolveOptions opts;
  opts.threshold = p.threshold;
  opts.max_steps = 12;
  const auto start = Clock::now();
  const SolveResult r = solve(trs, p.lhs, p.rhs, opts);
  const double secs = seconds_since(start);
  const auto keys = solution_keys(r, problem_vars(p.lhs, p.rhs));
  const std::set<std::string> want = {"{x->S(Z);} @ 1", "{x->Z;} @ 1"};
  o.require(keys == want, "solutions differ");
  o.require(secs < kPeanoSeconds, "took " + std::to_string(secs) + " s");
  o.detail = o.pass ? std::to_string(secs) + " s" : o.detail;
  return o;
}

Outcome cubic() {
  Outcome o;
  const ProblemFile pf = load("cubic.gtrs");
  const GradedTrs trs = pf.trs();
  const Problem& p = pf.problems.at(0);
  const auto vs = problem_vars(p.lhs, p.rhs);
  const auto start = Clock::now();
  for (Strategy strategy : {Strategy::kEagerSu, Strategy::kLazy}) {
    for (SearchOrder order : {SearchOrder::kBfs, SearchOrder::kIddfs, SearchOrder::kBestFirst}) {
      SolveOptions opts;
      opts.strategy = strategy;
      opts.order = order;
      opts.max_steps = 8;
      const SolveResult r = solve(trs, p.lhs, p.rhs, opts);
      o.require(r.status == SearchStatus::kExhausted || r.status == SearchStatus::kStepLimit,
                "search not exhaustive");
      std::set<std::string> sigmas;
      for (const Solution& s : r.solutions) sigmas.insert(canonical_substitution(s.sigma, vs));
      o.require(solution_keys(r, vs).count("{x->d;} @ 4") == 1, "{x -> d} @ 4 missing");
      o.require(sigmas == std::set<std::string>{"{x->d;}"}, "unexpected substitution emitted");
    }
  }
  OracleBounds bounds;
  bounds.pool = {T(pf, "a"), T(pf, "b"), T(pf, "c"), T(pf, "d")};
  const auto ranked = enumerate_best_unifiers(trs, p.lhs, p.rhs, bounds.pool, bounds);
  std::vector<std::string> got;
  for (const RankedUnifier& u : ranked) got.push_back(u.sigma.to_string() + " " + u.degree.to_string());
  o.require(got == std::vector<std::string>{"{x -> c} 3", "{x -> a} 4", "{x -> b} 4", "{x -> d} 4"},
            "oracle ranking differs");
  const double secs = seconds_since(start);
  o.require(secs < kCubicSeconds, "took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(secs) + " s";
  return o;
}

Outcome chain() {
  Outcome o;
  const ProblemFile pf = load("chain.gtrs");
  const GradedTrs trs = pf.trs();
  const Problem& p = pf.problems.at(0);
  SolveOptions opts;
  opts.max_steps = 8;
  const SolveResult r = solve(trs, p.lhs, p.rhs, opts);
  o.require(!r.solutions.empty(), "no solution");
  if (!r.solutions.empty()) {
    o.require(r.solutions.front().sigma.to_string() == "{x -> c}" &&
                  r.solutions.front().degree.to_string() == "3",
              "best solver answer is " + r.solutions.front().to_string());
  }
  OracleBounds bounds;
  bounds.pool = constants(trs.signature());
  const auto ranked = enumerate_best_unifiers(trs, p.lhs, p.rhs, bounds.pool, bounds);
  o.require(!ranked.empty() && ranked.front().sigma.to_string() == "{x -> b}" &&
                ranked.front().degree.to_string() == "2",
            "oracle best differs");
  return o;
}

Outcome unbalanced() {
  Outcome o;
  const ProblemFile pf = load("unbalanced.gtrs");
  const GradedTrs trs = pf.trs();
  const Problem& p = pf.problems.at(0);
  SolveOptions opts;
  opts.max_steps = 8;
  const SolveResult r = solve(trs, p.lhs, p.rhs, opts);
  std::set<std::string> degrees;
  for (const Solution& s : r.solutions) degrees.insert(s.degree.to_string());
  o.require(degrees == std::set<std::string>{"3"}, "solver degrees differ");
  const OracleOutcome c = best_conversion_degree(trs, p.lhs, p.rhs, OracleBounds{});
  o.require(c.conversion.has_value() && c.conversion->degree.to_string() == "1",
            "oracle conversion degree differs");
  return o;
}

Outcome innermost() {
  Outcome o;
  const ProblemFile pf = load("innermost.gtrs");
  const GradedTrs trs = pf.trs();
  const Term start = T(pf, "f(a)");
  const auto inner = innermost_rewrite_steps(trs, start);
  o.require(inner.size() == 1 && inner.front().result == T(pf, "f(b)") &&
                inner.front().degree.to_string() == "2",
            "innermost steps differ");
  RewriteSearchOptions opts;
  opts.innermost = true;
  for (const ReachedTerm& r : rewrite_search(trs, start, opts)) {
    if (r.term == T(pf, "f(b)")) o.require(r.degrees.front().to_string() == "2", "innermost reach");
  }
  opts.innermost = false;
  bool reached = false;
  for (const ReachedTerm& r : rewrite_search(trs, start, opts)) {
    if (r.term == T(pf, "f(b)")) reached = r.degrees.front().to_string() == "0";
  }
  o.require(reached, "unrestricted rewrite does not reach f(b) at 0");
  return o;
}

Outcome properties() {
  Outcome o;
  const int rc = std::system(GQN_PROPERTY_TEST " --gtest_brief=1 > /dev/null 2>&1");
  o.require(rc == 0, "property suite failed");
  return o;
}

constexpr QuantaleKind kKinds[] = {QuantaleKind::kBool, QuantaleKind::kLawvere,
                                   QuantaleKind::kLawvereMax, QuantaleKind::kFuzzyGodel,
                                   QuantaleKind::kFuzzyProduct};

Outcome oracle_soundness() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t solutions = 0, confirmed = 0, inconclusive = 0;
  for (int i = 0; i < 50; ++i) {
    GeneratorConfig config;
    config.kind = kKinds[i % 5];
    config.max_rules = 4;
    config.max_symbols = 3;
    const GeneratedProblem p = generate_problem(config, rng);
    SolveOptions opts;
    opts.max_steps = 4;
    OracleBounds bounds;
    bounds.max_depth = 4;
    bounds.max_nodes = 20000;
    bounds.pool = constants(p.trs.signature());
    for (const Solution& s : solve(p.trs, p.lhs, p.rhs, opts).solutions) {
      ++solutions;
      const Verification v = verify_solution(p.trs, p.lhs, p.rhs, s.sigma, s.degree, bounds, 16);
      confirmed += v.verdict == Verdict::kConfirmed;
      inconclusive += v.verdict == Verdict::kInconclusive;
      o.require(v.verdict != Verdict::kRefuted, "REFUTED: " + s.to_string());
    }
  }
  if (o.pass) {
    o.detail = std::to_string(solutions) + " solutions, " + std::to_string(confirmed) +
               " confirmed, " + std::to_string(inconclusive) + " inconclusive";
  }
  return o;
}

Outcome basicness() {
  Outcome o;
  std::mt19937_64 rng(8);
  constexpr std::size_t kDepth = 4;
  std::size_t derivations = 0, solutions = 0;
  for (int i = 0; i < 30; ++i) {
    GeneratorConfig config;
    config.kind = kKinds[i % 5];
    config.max_rules = 4;
    config.max_symbols = 3;
    config.require_right_ground = true;
    config.linear_problem = true;
    const GeneratedProblem p = generate_problem(config, rng);
    const GradedTrs ext = extend_trs(p.trs);
    const Term goal = Term::app("=?", {p.lhs, p.rhs});
    const auto vs = problem_vars(p.lhs, p.rhs);

    NarrowSearchOptions all;
    all.max_steps = kDepth;
    FreshVariables fresh;
    for (const NarrowDerivation& d : narrowing_derivations(ext, goal, all, fresh)) {
      ++derivations;
      o.require(is_basic(d), "non-basic derivation from " + goal.to_string());
    }

    NarrowSearchOptions basic = all;
    basic.basic_only = true;
    FreshVariables fresh2;
    std::set<std::string> narrowed;
    for (const NarrowDerivation& d : narrowing_derivations(ext, goal, basic, fresh2)) {
      if (d.end == Term::app("true")) {
        narrowed.insert(canonical_substitution(d.sigma, vs) + " @ " + d.degree.to_string());
      }
    }
    SolveOptions opts;
    opts.max_steps = kDepth;
    opts.deduplicate = false;
    const auto calculus = solution_keys(solve(p.trs, p.lhs, p.rhs, opts), vs);
    solutions += calculus.size();
    o.require(calculus == narrowed, "solution sets differ on " + goal.to_string());
  }
  if (o.pass) {
    o.detail = std::to_string(derivations) + " derivations, " + std::to_string(solutions) +
               " solutions";
  }
  return o;
}

Outcome church_rosser() {
  Outcome o;
  const ProblemFile pf = load("peano.gtrs");
  const GradedTrs trs = pf.trs();
  const std::vector<Term> grounds = ground_terms(trs.signature(), 3, 1000);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, grounds.size() - 1);
  OracleBounds bounds;
  bounds.max_depth = 4;
  int checked = 0;
  for (int attempt = 0; checked < 100 && attempt < 10000; ++attempt) {
    const Term& t = grounds[pick(rng)];
    const Term& s = grounds[pick(rng)];
    const OracleOutcome c = best_conversion_degree(trs, t, s, bounds);
    if (!c.conversion) continue;
    ++checked;
    const auto j = joinable(trs, t, s, 12);
    o.require(j.has_value(), t.to_string() + " and " + s.to_string() + " not joinable");
    if (j) {
      o.require(geq(j->degree, c.conversion->degree),
                t.to_string() + " =? " + s.to_string() + ": joined at " +
                    j->degree.to_string() + ", converted at " +
                    c.conversion->degree.to_string());
    }
  }
  o.require(checked == 100, "only " + std::to_string(checked) + " convertible pairs");
  return o;
}

}  // namespace
}  // namespace gqn

int main() {
  using Check = std::function<gqn::Outcome()>;
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"peano reproduction", gqn::peano},
      {"cubic incompleteness", gqn::cubic},
      {"chain gap", gqn::chain},
      {"unbalanced gap", gqn::unbalanced},
      {"innermost suboptimality", gqn::innermost},
      {"property suites", gqn::properties},
      {"oracle-backed soundness", gqn::oracle_soundness},
      {"basicness and correspondence", gqn::basicness},
      {"church-rosser spot check", gqn::church_rosser},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    gqn::Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n" << std::flush;
  }
  return failures == 0 ? 0 : 1;
}
