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

#include "gqnarrow/unify.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace gqn {
namespace {

Term v(const std::string& name, int index = 0) { return Term::var(name, index); }
Term c(const std::string& name) { return Term::app(name); }
Term f(Term a, Term b) { return Term::app("f", {std::move(a), std::move(b)}); }
Term plus(Term a, Term b) { return Term::app("+", {std::move(a), std::move(b)}); }

TEST(Unify, Decomposition) {
  MguResult r = mgu(f(v("x"), c("b")), f(c("a"), v("y")));
  ASSERT_TRUE(succeeded(r));
  EXPECT_EQ(std::get<Substitution>(r),
            Substitution::from_bindings({{Var{"x", 0}, c("a")}, {Var{"y", 0}, c("b")}}));
}

TEST(Unify, Failures) {
  MguResult occurs = mgu(v("x"), Term::app("S", {v("x")}));
  ASSERT_FALSE(succeeded(occurs));
  EXPECT_EQ(std::get<UnifyFailure>(occurs), UnifyFailure::kOccurs);
  MguResult clash = mgu(c("a"), c("b"));
  ASSERT_FALSE(succeeded(clash));
  EXPECT_EQ(std::get<UnifyFailure>(clash), UnifyFailure::kClash);
  EXPECT_FALSE(unifiable({{c("a"), c("b")}}));
  EXPECT_TRUE(unifiable({}));
}

TEST(Unify, TransitiveClash) {
  const EquationSet eqs = {{v("x"), c("a")}, {v("x"), c("b")}};
  EXPECT_FALSE(unifiable(eqs));
  // Exhaustive check over the two constants.
  for (const char* k : {"a", "b"}) {
    const Substitution s = Substitution::from_bindings({{Var{"x", 0}, c(k)}});
    bool all = true;
    for (const Equation& e : eqs) all = all && apply_subst(e.lhs, s) == apply_subst(e.rhs, s);
    EXPECT_FALSE(all);
  }
}

TEST(Unify, PeanoStep) {
  // (x+x)+x against a variant x'+Z of the first rule's lhs.
  const Term lhs = plus(plus(v("x"), v("x")), v("x"));
  const Term rule = plus(v("x", 3), c("Z"));
  MguResult r = mgu(lhs, rule);
  ASSERT_TRUE(succeeded(r));
  const Substitution& s = std::get<Substitution>(r);
  ASSERT_NE(s.lookup(Var{"x", 0}), nullptr);
  EXPECT_EQ(*s.lookup(Var{"x", 0}), c("Z"));
  EXPECT_EQ(apply_subst(lhs, s), apply_subst(rule, s));
}

TEST(Unify, VariablePairsBindTheYoungerVariable) {
  MguResult r = mgu(v("x", 5), v("y"));
  ASSERT_TRUE(succeeded(r));
  EXPECT_EQ(std::get<Substitution>(r), Substitution::from_bindings({{Var{"x", 5}, v("y")}}));
  MguResult r2 = mgu(v("y"), v("x", 5));
  EXPECT_EQ(std::get<Substitution>(r), std::get<Substitution>(r2));
}

TEST(Unify, OrientationIndependent) {
  const Term s = f(v("x"), Term::app("S", {v("y", 2)}));
  const Term t = f(Term::app("S", {v("z", 1)}), v("x"));
  EXPECT_EQ(std::get<Substitution>(mgu(s, t)), std::get<Substitution>(mgu(t, s)));
}

TEST(Unify, Matching) {
  auto m = match(f(v("x"), v("x")), f(c("a"), c("a")));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->at(Var{"x", 0}), c("a"));
  EXPECT_FALSE(match(f(v("x"), v("x")), f(c("a"), c("b"))).has_value());
  EXPECT_FALSE(match(f(c("a"), v("x")), f(v("y"), c("b"))).has_value());
  // Matchers need not be idempotent.
  auto m2 = match(f(v("x"), v("y")), f(v("y"), c("a")));
  ASSERT_TRUE(m2.has_value());
  EXPECT_EQ(m2->at(Var{"x", 0}), v("y"));
}

TEST(Unify, Rendering) {
  EXPECT_EQ(to_string(EquationSet{{c("a"), c("a")}, {v("x"), c("b")}}), "{a = a, x = b}");
  EXPECT_EQ(to_string(EquationSet{}), "{}");
}

}  // namespace
}  // namespace gqn
