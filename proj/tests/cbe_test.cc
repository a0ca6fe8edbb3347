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

#include "gqnarrow/cbe.h"

#include <gtest/gtest.h>

#include "gqnarrow/error.h"
#include "test_util.h"

namespace gqn {
namespace {

using testing::D;
using testing::L;
constexpr auto kLawvere = QuantaleKind::kLawvere;
constexpr auto kProduct = QuantaleKind::kFuzzyProduct;
constexpr auto kGodel = QuantaleKind::kFuzzyGodel;

TEST(Cbe, Apply) {
  EXPECT_EQ(cbe_apply(Cbe::scale(3), L(1)), L(3));
  EXPECT_EQ(cbe_apply(Cbe::id(), L(7, 3)), L(7, 3));
  EXPECT_EQ(cbe_apply(Cbe::const_kappa(), L(9)), L(0));
  EXPECT_EQ(cbe_apply(Cbe::const_kappa(), D(kGodel, 1, 4)), D(kGodel, 1));
  EXPECT_EQ(cbe_apply(Cbe::pow(2), D(kProduct, 1, 2)), D(kProduct, 1, 4));
  EXPECT_EQ(cbe_apply(Cbe::scale(2), Degree::infinity(kLawvere)), Degree::infinity(kLawvere));
  // scale(0) sends everything, infinity included, to the unit.
  EXPECT_EQ(cbe_apply(Cbe::scale(0), Degree::infinity(kLawvere)), L(0));
}

TEST(Cbe, ComposeAndTensor) {
  EXPECT_TRUE(cbe_equal(cbe_compose(Cbe::scale(2), Cbe::scale(3), kLawvere), Cbe::scale(6),
                        kLawvere));
  EXPECT_EQ(cbe_compose(Cbe::scale(2), Cbe::scale(3), kLawvere), Cbe::scale(6));
  EXPECT_TRUE(cbe_equal(cbe_compose(Cbe::id(), Cbe::scale(5), kLawvere), Cbe::scale(5), kLawvere));
  EXPECT_EQ(cbe_tensor(Cbe::scale(1), Cbe::scale(2), kLawvere), Cbe::scale(3));
  EXPECT_EQ(cbe_tensor(Cbe::pow(2), Cbe::pow(3), kProduct), Cbe::pow(5));
  EXPECT_EQ(cbe_compose(Cbe::pow(2), Cbe::pow(3), kProduct), Cbe::pow(6));
  EXPECT_EQ(cbe_tensor(Cbe::id(), Cbe::id(), kGodel), Cbe::id());
  EXPECT_EQ(cbe_tensor(Cbe::scale(2), Cbe::scale(3), QuantaleKind::kLawvereMax), Cbe::scale(3));
}

TEST(Cbe, Normalize) {
  const Cbe three = Cbe::tensor(Cbe::id(), Cbe::tensor(Cbe::id(), Cbe::id()));
  EXPECT_EQ(cbe_normalize(three, kLawvere), Cbe::scale(3));
  // Pointwise cross-check of the normal form on sampled rationals.
  for (long n = 0; n < 10; ++n) {
    const Degree a = L(n, 3);
    EXPECT_EQ(cbe_apply(three, a), tensor(a, tensor(a, a)));
    EXPECT_EQ(cbe_apply(cbe_normalize(three, kLawvere), a), cbe_apply(three, a));
  }
  EXPECT_EQ(cbe_normalize(Cbe::compose(Cbe::const_kappa(), Cbe::scale(4)), kLawvere),
            Cbe::const_kappa());
  EXPECT_TRUE(cbe_equal(Cbe::scale(1), Cbe::id(), kLawvere));
  EXPECT_FALSE(cbe_equal(Cbe::scale(2), Cbe::id(), kLawvere));
  EXPECT_TRUE(cbe_equal(Cbe::scale(0), Cbe::const_kappa(), kLawvere));
}

TEST(Cbe, Admissibility) {
  EXPECT_TRUE(admissible(Cbe::scale(3), kLawvere));
  EXPECT_FALSE(admissible(Cbe::scale(3), kGodel));
  EXPECT_FALSE(admissible(Cbe::pow(2), kLawvere));
  EXPECT_TRUE(admissible(Cbe::pow(2), kProduct));
  EXPECT_TRUE(admissible(Cbe::const_kappa(), QuantaleKind::kBool));
  EXPECT_THROW(require_admissible(Cbe::scale(3), kGodel), QuantaleError);
  EXPECT_THROW(cbe_apply(Cbe::scale(2), D(kGodel, 1, 2)), QuantaleError);
  EXPECT_THROW(Cbe::pow(0), QuantaleError);
}

TEST(Cbe, ParseAndPrint) {
  EXPECT_EQ(Cbe::parse("id"), Cbe::id());
  EXPECT_EQ(Cbe::parse("const"), Cbe::const_kappa());
  EXPECT_EQ(Cbe::parse("scale(3/2)"), Cbe::scale(mpq_class(3, 2)));
  EXPECT_EQ(Cbe::parse("pow(4)"), Cbe::pow(4));
  EXPECT_EQ(Cbe::scale(mpq_class(1, 2)).to_string(), "scale(1/2)");
  EXPECT_EQ(Cbe::pow(2).to_string(), "pow(2)");
  EXPECT_THROW(Cbe::parse("scale"), QuantaleError);
  EXPECT_THROW(Cbe::parse("twice"), QuantaleError);
}

}  // namespace
}  // namespace gqn
