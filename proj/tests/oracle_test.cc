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

#include "gqnarrow/oracle.h"

#include <gtest/gtest.h>

#include "gqnarrow/error.h"
#include "gqnarrow/narrow.h"
#include "test_util.h"

namespace gqn {
namespace {

using testing::L;
using testing::T;

std::vector<Term> constants(const ProblemFile& pf) {
  std::vector<Term> out;
  for (const std::string& f : pf.symbol_order) {
    if (pf.signature.arity(f).empty()) out.push_back(Term::app(f));
  }
  return out;
}

Substitution x_to(const ProblemFile& pf, const char* t) {
  return Substitution::from_bindings({{Var{"x", 0}, T(pf, t)}});
}

TEST(Oracle, BestConversionDegree) {
  const ProblemFile cubic = testing::load("cubic.gtrs");
  OracleOutcome o = best_conversion_degree(cubic.trs(), T(cubic, "f(c,c,c)"),
                                           T(cubic, "f(a,b,d)"), OracleBounds{});
  ASSERT_TRUE(o.conversion.has_value());
  EXPECT_EQ(o.conversion->degree, L(3));
  EXPECT_FALSE(o.cut_bound.has_value());
  // The witness path is a chain of graph edges whose degrees fold to the total.
  Degree acc = L(0);
  Term cur = T(cubic, "f(c,c,c)");
  for (const OracleEdge& e : o.conversion->path) {
    EXPECT_EQ(e.source, cur);
    acc = tensor(acc, e.degree);
    cur = e.target;
  }
  EXPECT_EQ(cur, T(cubic, "f(a,b,d)"));
  EXPECT_EQ(acc, L(3));

  OracleOutcome self =
      best_conversion_degree(cubic.trs(), T(cubic, "a"), T(cubic, "a"), OracleBounds{});
  ASSERT_TRUE(self.conversion.has_value());
  EXPECT_EQ(self.conversion->degree, L(0));
  EXPECT_TRUE(self.conversion->path.empty());

  const ProblemFile unbalanced = testing::load("unbalanced.gtrs");
  OracleOutcome u = best_conversion_degree(unbalanced.trs(), T(unbalanced, "f(a)"),
                                           T(unbalanced, "g(b)"), OracleBounds{});
  ASSERT_TRUE(u.conversion.has_value());
  EXPECT_EQ(u.conversion->degree, L(1));

  EXPECT_FALSE(
      best_conversion_degree(cubic.trs(), T(cubic, "a"), T(cubic, "f(a,a,a)"), OracleBounds{})
          .conversion.has_value());
  EXPECT_THROW(best_conversion_degree(cubic.trs(), T(cubic, "x"), T(cubic, "a"), OracleBounds{}),
               TermError);
}

TEST(Oracle, EdgesAgreeWithRewriting) {
  const ProblemFile peano = testing::load("peano.gtrs");
  const GradedTrs trs = peano.trs();
  OracleBounds bounds;
  bounds.max_depth = 6;
  for (const char* text : {"S(Z) + S(Z)", "S(S(Z))", "(Z + Z) + S(Z)", "Z"}) {
    const Term s = T(peano, text);
    const auto steps = rewrite_steps(trs, s);
    for (const OracleEdge& e : ground_edges(trs, s, bounds)) {
      if (!e.forward) continue;
      bool reproduced = false;
      for (const RewriteStep& st : steps) {
        reproduced = reproduced || (st.position == e.position && st.rule == e.rule &&
                                    st.result == e.target && st.degree == e.degree);
      }
      EXPECT_TRUE(reproduced) << e.source.to_string() << " -> " << e.target.to_string();
    }
  }
}

TEST(Oracle, ReverseStepsWithExtraVariablesUseThePool) {
  const ProblemFile pf = parse_problem_file(
      "quantale lawvere\nvar x;\nfun a/0\nfun b/0\nfun h/1\nrule 2 : h(x) -> a\n");
  OracleBounds bounds;
  bounds.pool = {T(pf, "a"), T(pf, "b")};
  std::vector<Degree> cut;
  const auto edges = ground_edges(pf.trs(), T(pf, "a"), bounds, &cut);
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_FALSE(edges[0].forward);
  EXPECT_EQ(cut.size(), 1u);
  const OracleOutcome o = best_conversion_degree(pf.trs(), T(pf, "h(a)"), T(pf, "h(b)"), bounds);
  ASSERT_TRUE(o.conversion.has_value());
  EXPECT_EQ(o.conversion->degree, L(4));
  EXPECT_TRUE(o.cut_bound.has_value());
}

TEST(Oracle, VerifySolution) {
  const ProblemFile cubic = testing::load("cubic.gtrs");
  OracleBounds bounds;
  bounds.pool = constants(cubic);
  const Term t = T(cubic, "f(x,x,x)");
  const Term s = T(cubic, "f(a,b,d)");
  EXPECT_EQ(verify_solution(cubic.trs(), t, s, x_to(cubic, "d"), L(4), bounds).verdict,
            Verdict::kConfirmed);
  // A weaker claim holds; claiming better than the best conversion does not.
  const Verification weaker = verify_solution(cubic.trs(), t, s, x_to(cubic, "d"), L(5), bounds);
  EXPECT_EQ(weaker.verdict, Verdict::kConfirmed);
  const Verification overclaimed =
      verify_solution(cubic.trs(), t, s, x_to(cubic, "d"), L(3), bounds);
  EXPECT_EQ(overclaimed.verdict, Verdict::kRefuted);
  EXPECT_EQ(to_string(Verdict::kInconclusive), "INCONCLUSIVE(bounds)");

  // Remaining variables are grounded over the pool.
  const Verification open = verify_solution(cubic.trs(), t, T(cubic, "f(x,x,x)"), Substitution(),
                                            L(0), bounds);
  EXPECT_EQ(open.verdict, Verdict::kConfirmed);
  EXPECT_EQ(open.checks.size(), 4u);
  OracleBounds empty;
  EXPECT_EQ(verify_solution(cubic.trs(), t, t, Substitution(), L(0), empty).verdict,
            Verdict::kInconclusive);

  const ProblemFile peano = testing::load("peano.gtrs");
  OracleBounds small;
  small.max_depth = 5;
  EXPECT_EQ(verify_solution(peano.trs(), T(peano, "x + S(Z)"), T(peano, "(x + x) + x"),
                            x_to(peano, "Z"), L(1), small)
                .verdict,
            Verdict::kConfirmed);
}

TEST(Oracle, DegreeClaimsAreComparedInTheQuantaleOrder) {
  // Claiming 5 where the best conversion is 4: 4 is better than 5 in the
  // Lawvere order, so the claim holds; claiming 3 is refuted.
  const ProblemFile cubic = testing::load("cubic.gtrs");
  OracleBounds bounds;
  const Term t = T(cubic, "f(d,d,d)");
  const Term s = T(cubic, "f(a,b,d)");
  EXPECT_EQ(verify_solution(cubic.trs(), t, s, Substitution(), L(5), bounds).verdict,
            Verdict::kConfirmed);
  EXPECT_EQ(verify_solution(cubic.trs(), t, s, Substitution(), L(7, 2), bounds).verdict,
            Verdict::kRefuted);
}

TEST(Oracle, EnumerateBestUnifiers) {
  const ProblemFile cubic = testing::load("cubic.gtrs");
  const auto ranked = enumerate_best_unifiers(cubic.trs(), T(cubic, "f(x,x,x)"),
                                              T(cubic, "f(a,b,d)"), constants(cubic), {});
  ASSERT_EQ(ranked.size(), 4u);
  EXPECT_EQ(ranked[0].sigma, x_to(cubic, "c"));
  EXPECT_EQ(ranked[0].degree, L(3));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(ranked[i].degree, L(4));
  EXPECT_EQ(ranked[1].sigma, x_to(cubic, "a"));
  EXPECT_EQ(ranked[2].sigma, x_to(cubic, "b"));
  EXPECT_EQ(ranked[3].sigma, x_to(cubic, "d"));

  const ProblemFile chain = testing::load("chain.gtrs");
  const auto cr = enumerate_best_unifiers(chain.trs(), T(chain, "f(x,x,x)"), T(chain, "f(a,b,c)"),
                                          constants(chain), {});
  ASSERT_EQ(cr.size(), 3u);
  EXPECT_EQ(cr[0].sigma, x_to(chain, "b"));
  EXPECT_EQ(cr[0].degree, L(2));
  EXPECT_EQ(cr[1].degree, L(3));
  EXPECT_EQ(cr[2].sigma, x_to(chain, "c"));
  EXPECT_EQ(cr[2].degree, L(3));

  EXPECT_TRUE(enumerate_best_unifiers(chain.trs(), T(chain, "f(x,x,x)"), T(chain, "f(a,b,c)"), {},
                                      {})
                  .empty());
}

TEST(Oracle, PartialOrdersAreRejected) {
  // All supported quantales are totally ordered; the gate is exercised
  // through is_totally_ordered only.
  for (QuantaleKind k : testing::kAllKinds) EXPECT_TRUE(is_totally_ordered(k));
}

TEST(Probe, UnbalancedGapIsFlagged) {
  const ProblemFile pf = testing::load("unbalanced.gtrs");
  const auto findings = probe_system(pf.trs(), T(pf, "f(a)"), T(pf, "g(b)"), 4);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_TRUE(findings[0].sigma.is_identity());
  EXPECT_EQ(findings[0].ordinary_degree, L(1));
  ASSERT_TRUE(findings[0].basic_degree.has_value());
  EXPECT_EQ(*findings[0].basic_degree, L(3));
}

TEST(Probe, RightGroundTrialsNeverFlag) {
  GeneratorConfig config;
  config.require_right_ground = true;
  config.linear_problem = true;
  const ProbeReport report = conjecture_probe(config, 20, 3, 7);
  EXPECT_EQ(report.trials, 20u);
  for (const ProbeFinding& f : report.findings) ADD_FAILURE() << f.to_string();
  EXPECT_EQ(conjecture_probe(config, 0).trials, 0u);
  EXPECT_TRUE(conjecture_probe(config, 0).findings.empty());
}

}  // namespace
}  // namespace gqn
