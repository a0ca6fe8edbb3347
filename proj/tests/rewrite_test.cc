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

#include "gqnarrow/rewrite.h"

#include <gtest/gtest.h>

#include "gqnarrow/cbe.h"
#include "gqnarrow/error.h"
#include "test_util.h"

namespace gqn {
namespace {

using testing::L;
using testing::T;

std::optional<Degree> reached(const std::vector<ReachedTerm>& rs, const Term& t) {
  for (const ReachedTerm& r : rs) {
    if (r.term == t) return r.degrees.front();
  }
  return std::nullopt;
}

TEST(Rewrite, RuleAttributes) {
  const ProblemFile peano = testing::load("peano.gtrs");
  const GradedTrs trs = peano.trs();
  const RuleAttributes& r1 = trs.attributes().rules[0];
  EXPECT_TRUE(r1.balanced);
  EXPECT_TRUE(r1.right_linear);
  EXPECT_FALSE(r1.right_ground);
  EXPECT_TRUE(trs.declared_confluent());

  const ProblemFile unbalanced = testing::load("unbalanced.gtrs");
  const GradedTrs unbalanced_trs = unbalanced.trs();
  const RuleAttributes& u1 = unbalanced_trs.attributes().rules[0];
  EXPECT_FALSE(u1.balanced);
  EXPECT_EQ(u1.unbalanced_vars, (std::vector<Var>{Var{"x", 0}}));
  EXPECT_FALSE(unbalanced_trs.attributes().balanced);

  const TrsAttributes cubic = testing::load("cubic.gtrs").trs().attributes();
  EXPECT_TRUE(cubic.right_ground);
  EXPECT_TRUE(cubic.left_ground);
  EXPECT_TRUE(cubic.balanced);
}

TEST(Rewrite, RejectsBadRules) {
  const ProblemFile pf = testing::load("cubic.gtrs");
  auto rules = pf.rules;
  rules.push_back(RewriteRule{L(1), Term::var("x"), T(pf, "a")});
  EXPECT_THROW(GradedTrs(pf.signature, rules), RuleError);
  rules.back() = RewriteRule{L(1), T(pf, "a"), Term::var("x")};
  EXPECT_THROW(GradedTrs(pf.signature, rules), RuleError);
  rules.back() = RewriteRule{Degree::of(QuantaleKind::kFuzzyGodel, 1), T(pf, "a"), T(pf, "b")};
  EXPECT_THROW(GradedTrs(pf.signature, rules), RuleError);
}

TEST(Rewrite, Steps) {
  const ProblemFile pf = testing::load("innermost.gtrs");
  const GradedTrs trs = pf.trs();
  const auto steps = rewrite_steps(trs, T(pf, "f(a)"));
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].position, Position::root());
  EXPECT_EQ(steps[0].rule, 0u);
  EXPECT_EQ(steps[0].degree, L(0));
  EXPECT_EQ(steps[1].position, Position::parse("1"));
  EXPECT_EQ(steps[1].rule, 1u);
  EXPECT_EQ(steps[1].degree, L(2));
  EXPECT_TRUE(rewrite_steps(trs, T(pf, "f(b)")).empty());

  const ProblemFile peano = testing::load("peano.gtrs");
  const auto ps = rewrite_steps(peano.trs(), T(peano, "S(Z)"));
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].result, T(peano, "Z"));
  EXPECT_EQ(ps[0].degree, L(1));
}

TEST(Rewrite, Innermost) {
  const ProblemFile pf = testing::load("innermost.gtrs");
  const auto steps = innermost_rewrite_steps(pf.trs(), T(pf, "f(a)"));
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0].position, Position::parse("1"));
  EXPECT_EQ(steps[0].degree, L(2));
  EXPECT_TRUE(innermost_rewrite_steps(pf.trs(), T(pf, "f(b)")).empty());
  const ProblemFile peano = testing::load("peano.gtrs");
  const auto ps = innermost_rewrite_steps(peano.trs(), T(peano, "S(Z)"));
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].position, Position::root());
}

TEST(Rewrite, ExtendedSystem) {
  const GradedTrs trs = testing::load("peano.gtrs").trs();
  const GradedTrs ext = extend_trs(trs);
  ASSERT_EQ(ext.rules().size(), 4u);
  EXPECT_EQ(ext.rules().back().degree, L(0));
  EXPECT_EQ(ext.rules().back().rhs, Term::app("true"));
  EXPECT_TRUE(ext.is_extended());
  EXPECT_THROW(extend_trs(ext), RuleError);
}

TEST(Rewrite, Search) {
  const ProblemFile peano = testing::load("peano.gtrs");
  RewriteSearchOptions one;
  one.max_steps = 1;
  EXPECT_EQ(reached(rewrite_search(peano.trs(), T(peano, "S(Z)"), one), T(peano, "Z")), L(1));
  RewriteSearchOptions zero;
  zero.max_steps = 0;
  const auto self = rewrite_search(peano.trs(), T(peano, "S(Z)"), zero);
  ASSERT_EQ(self.size(), 1u);
  EXPECT_EQ(self[0].degrees, std::vector<Degree>{L(0)});

  const ProblemFile pf = testing::load("innermost.gtrs");
  RewriteSearchOptions opts;
  EXPECT_EQ(reached(rewrite_search(pf.trs(), T(pf, "f(a)"), opts), T(pf, "f(b)")), L(0));
  opts.innermost = true;
  EXPECT_EQ(reached(rewrite_search(pf.trs(), T(pf, "f(a)"), opts), T(pf, "f(b)")), L(2));
}

TEST(Rewrite, SearchTraceDegreesCompose) {
  const ProblemFile peano = testing::load("peano.gtrs");
  RewriteSearchOptions opts;
  opts.max_steps = 4;
  for (const ReachedTerm& r : rewrite_search(peano.trs(), T(peano, "S(Z) + S(Z)"), opts)) {
    const RewriteTrace& trace = r.traces.front();
    Degree acc = L(0);
    Term cur = T(peano, "S(Z) + S(Z)");
    for (const TraceStep& s : trace) {
      EXPECT_EQ(s.source, cur);
      const Degree next = tensor(acc, s.step.degree);
      EXPECT_TRUE(leq(next, acc));
      acc = next;
      cur = s.step.result;
    }
    EXPECT_EQ(cur, r.term);
    EXPECT_EQ(acc, r.degrees.front());
  }
}

TEST(Rewrite, Joinability) {
  const ProblemFile peano = testing::load("peano.gtrs");
  auto same = joinable(peano.trs(), T(peano, "S(Z)"), T(peano, "S(Z)"), 4);
  ASSERT_TRUE(same.has_value());
  EXPECT_EQ(same->degree, L(0));
  auto sz = joinable(peano.trs(), T(peano, "S(Z)"), T(peano, "Z"), 4);
  ASSERT_TRUE(sz.has_value());
  EXPECT_EQ(sz->degree, L(1));
  const ProblemFile cubic = testing::load("cubic.gtrs");
  auto j = joinable(cubic.trs(), T(cubic, "f(c,c,c)"), T(cubic, "f(a,b,d)"), 8);
  ASSERT_TRUE(j.has_value());
  EXPECT_EQ(j->degree, L(3));
  EXPECT_FALSE(joinable(cubic.trs(), T(cubic, "a"), T(cubic, "f(a,a,a)"), 4).has_value());
}

}  // namespace
}  // namespace gqn
