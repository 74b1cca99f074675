// Copyright 2026 The fuzzysynth Authors.
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

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "fuzzysynth/dsl.hpp"
#include "fuzzysynth/error.hpp"
#include "test_support.hpp"

namespace fuzzysynth {
namespace {

const Config kCfg;
const FunctionTables& tables() {
  static const FunctionTables t(kCfg);
  return t;
}

TEST(FunctionIdTest, CanonicalOrderAndNames) {
  const std::vector<std::string> expected = {"head",   "tail",    "plus1",  "minus1",
                                             "times2", "times3",  "times4", "timesm1",
                                             "power2", "div2",    "div3",   "div4"};
  EXPECT_EQ(function_names(), expected);
  for (int s = 0; s < kNumFunctions; ++s) {
    EXPECT_EQ(parse_function(expected[s]), function_at(s));
  }
  EXPECT_FALSE(parse_function("map").has_value());
}

// The closed forms of sigma over value indices, evaluated directly.
TEST(IndexMapTest, MatchesClosedForms) {
  const int lmin = kCfg.min_value;
  const int d = kCfg.num_values();
  auto truncdiv = [](int a, int q) { return a / q; };
  const std::vector<std::pair<FunctionId, std::function<long(int)>>> forms = {
      {FunctionId::kPlus1, [](int k) { return k + 1; }},
      {FunctionId::kMinus1, [](int k) { return k - 1; }},
      {FunctionId::kTimes2, [&](int k) { return 2 * k + lmin; }},
      {FunctionId::kTimes3, [&](int k) { return 3 * k + 2 * lmin; }},
      {FunctionId::kTimes4, [&](int k) { return 4 * k + 3 * lmin; }},
      {FunctionId::kTimesM1, [&](int k) { return -k - 2 * lmin; }},
      {FunctionId::kPower2, [&](int k) { return long(k + lmin) * (k + lmin) - lmin; }},
      {FunctionId::kDiv2, [&](int k) { return truncdiv(k + lmin, 2) - lmin; }},
      {FunctionId::kDiv3, [&](int k) { return truncdiv(k + lmin, 3) - lmin; }},
      {FunctionId::kDiv4, [&](int k) { return truncdiv(k + lmin, 4) - lmin; }},
  };
  for (const auto& [f, form] : forms) {
    const IndexMap& m = tables().map(f);
    for (int k = 0; k < d; ++k) {
      const long t = form(k);
      const int expected = t >= 0 && t < d ? static_cast<int>(t) : IndexMap::kOutOfRange;
      ASSERT_EQ(m[k], expected) << function_name(f) << " k=" << k;
    }
  }
}

TEST(IndexMapTest, Injectivity) {
  for (FunctionId f : {FunctionId::kPlus1, FunctionId::kMinus1, FunctionId::kTimes2,
                       FunctionId::kTimes3, FunctionId::kTimes4, FunctionId::kTimesM1}) {
    EXPECT_TRUE(tables().map(f).injective()) << function_name(f);
  }
  for (FunctionId f :
       {FunctionId::kPower2, FunctionId::kDiv2, FunctionId::kDiv3, FunctionId::kDiv4}) {
    EXPECT_FALSE(tables().map(f).injective()) << function_name(f);
  }
  EXPECT_THROW(IndexMap(FunctionId::kHead, kCfg), ValidationError);
}

TEST(ConcreteTest, DivisionTruncatesTowardZero) {
  EXPECT_EQ(apply_concrete(FunctionId::kDiv2, Value::list({3, -3}), kCfg), Value::list({1, -1}));
  EXPECT_EQ(apply_concrete(FunctionId::kDiv4, Value::list({-7, 7, -100}), kCfg),
            Value::list({-1, 1, -25}));
}

TEST(ConcreteTest, OverflowNullifiesWholeList) {
  EXPECT_EQ(apply_concrete(FunctionId::kPlus1, Value::list({100, 5}), kCfg), Value::null());
  EXPECT_EQ(apply_concrete(FunctionId::kPower2, Value::list({1, 11}), kCfg), Value::null());
}

TEST(ConcreteTest, ScalarsAndNullMapToNull) {
  EXPECT_EQ(apply_concrete(FunctionId::kHead, Value::integer(7), kCfg), Value::null());
  EXPECT_EQ(apply_concrete(FunctionId::kPlus1, Value::integer(7), kCfg), Value::null());
  for (FunctionId f : kAllFunctions) {
    EXPECT_EQ(apply_concrete(f, Value::null(), kCfg), Value::null());
  }
}

TEST(ConcreteTest, HeadAndTail) {
  EXPECT_EQ(apply_concrete(FunctionId::kTail, Value::list({4, 9, 2}), kCfg), Value::integer(2));
  EXPECT_EQ(apply_concrete(FunctionId::kHead, Value::list({4, 9, 2}), kCfg), Value::integer(4));
}

TEST(ConcreteTest, ExecuteComposesAndStopsAtNull) {
  const Program p = {FunctionId::kTimes2, FunctionId::kPlus1, FunctionId::kTail};
  EXPECT_EQ(execute(p, Value::list({1, 2}), kCfg), Value::integer(5));
  EXPECT_EQ(execute({FunctionId::kHead, FunctionId::kPlus1}, Value::list({1}), kCfg),
            Value::null());
}

TEST(FuzzyTest, MatchesConcreteOnSharpStates) {
  std::mt19937_64 rng(3);
  for (FunctionId f : kAllFunctions) {
    for (int n = 0; n < 1000; ++n) {
      const Value v = testing::random_value(kCfg, rng);
      const Value r = apply_concrete(f, v, kCfg);
      const StateTensor out = transform_fuzzy(f, encode(v, kCfg), tables());
      if (r.is_null()) {
        ASSERT_FALSE(is_sharp(out)) << function_name(f) << " " << v;
        ASSERT_EQ(out(0, 0, 0), 0.0);
      } else {
        ASSERT_EQ(out, encode(r, kCfg)) << function_name(f) << " " << v;
      }
    }
  }
}

TEST(FuzzyTest, HeadOfMixture) {
  const StateTensor s =
      0.5 * encode(Value::list({1}), kCfg) + 0.5 * encode(Value::list({2, 3}), kCfg);
  const StateTensor out = transform_fuzzy(FunctionId::kHead, s, tables());
  StateTensor expected(kCfg);
  expected.at(1, 0, 101) = 0.5;
  expected.at(1, 0, 102) = 0.5;
  EXPECT_EQ(out, expected);
}

TEST(FuzzyTest, ArithmeticOnIntegerGivesZeroTensor) {
  EXPECT_EQ(transform_fuzzy(FunctionId::kPlus1, encode(Value::integer(5), kCfg), tables()),
            StateTensor(kCfg));
}

TEST(FuzzyTest, TailOfLengthOneListEqualsHead) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 50; ++n) {
    StateTensor s(kCfg);
    s.at(2, 0, static_cast<int>(rng() % 201)) = 1.0;
    EXPECT_EQ(transform_fuzzy(FunctionId::kTail, s, tables()),
              transform_fuzzy(FunctionId::kHead, s, tables()));
  }
}

TEST(FuzzyTest, RejectsInvalidState) {
  StateTensor s(kCfg);
  s.at(2, 1, 0) = 1.0;
  EXPECT_THROW(transform_fuzzy(FunctionId::kPlus1, s, tables()), ValidationError);
  StateTensor heavy(kCfg);
  heavy.at(3, 0, 0) = 0.7;
  heavy.at(2, 0, 0) = 0.7;
  EXPECT_THROW(transform_fuzzy(FunctionId::kHead, heavy, tables()), ValidationError);
}

TEST(FuzzyTest, OutOfRangeMassIsDropped) {
  // Position 0 overflows and loses its mass; position 1 survives.
  const StateTensor out =
      transform_fuzzy(FunctionId::kPlus1, encode(Value::list({100, 5}), kCfg), tables());
  StateTensor expected(kCfg);
  expected.at(3, 1, 106) = 1.0;
  EXPECT_EQ(out, expected);
}

TEST(FuzzyTest, CollisionsAreSummed) {
  const StateTensor s =
      0.25 * encode(Value::list({2}), kCfg) + 0.75 * encode(Value::list({3}), kCfg);
  const StateTensor out = transform_fuzzy(FunctionId::kDiv2, s, tables());
  EXPECT_DOUBLE_EQ(out(2, 0, 101), 1.0);
}

TEST(FuzzyProperties, Linearity) {
  std::mt19937_64 rng(9);
  for (FunctionId f : kAllFunctions) {
    for (int n = 0; n < 20; ++n) {
      const StateTensor a = testing::random_mixture(kCfg, rng, 3);
      const StateTensor b = testing::random_column_state(kCfg, rng);
      const double alpha = 0.3, beta = 0.6;
      const StateTensor lhs = transform_fuzzy(f, alpha * a + beta * b, tables());
      const StateTensor rhs =
          alpha * transform_fuzzy(f, a, tables()) + beta * transform_fuzzy(f, b, tables());
      ASSERT_LE(testing::max_abs_diff(lhs.data(), rhs.data()), 1e-15) << function_name(f);
    }
  }
}

TEST(FuzzyProperties, MassBoundPreserved) {
  std::mt19937_64 rng(10);
  for (FunctionId f : kAllFunctions) {
    for (int n = 0; n < 100; ++n) {
      const StateTensor s = n % 2 ? testing::random_mixture(kCfg, rng, 1 + n % 5)
                                  : testing::random_column_state(kCfg, rng);
      const auto r = validate(transform_fuzzy(f, s, tables()));
      ASSERT_TRUE(r.ok()) << function_name(f) << ": " << r.summary();
    }
  }
}

TEST(FuzzyProperties, NegationConservesListMass) {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 50; ++n) {
    const StateTensor s = testing::random_column_state(kCfg, rng);
    const StateTensor out = transform_fuzzy(FunctionId::kTimesM1, s, tables());
    for (int i = 2; i < kCfg.num_rows(); ++i) {
      for (int j = 0; j <= i - 2; ++j) {
        double before = 0.0, after = 0.0;
        for (int k = 0; k < kCfg.num_values(); ++k) {
          before += s(i, j, k);
          after += out(i, j, k);
        }
        ASSERT_NEAR(before, after, 1e-15);
      }
    }
  }
}

TEST(FuzzyProperties, ArithmeticPreservesLength) {
  std::mt19937_64 rng(13);
  for (FunctionId f : kAllFunctions) {
    if (!is_arithmetic(f)) continue;
    for (int row = 2; row < kCfg.num_rows(); ++row) {
      StateTensor s(kCfg);
      for (int j = 0; j <= row - 2; ++j) s.at(row, j, static_cast<int>(rng() % 201)) = 1.0;
      const StateTensor out = transform_fuzzy(f, s, tables());
      for (int i = 0; i < kCfg.num_rows(); ++i) {
        if (i == row) continue;
        for (int j = 0; j < kCfg.max_length; ++j)
          for (int k = 0; k < kCfg.num_values(); ++k) ASSERT_EQ(out(i, j, k), 0.0);
      }
    }
  }
}

// Injective maps: a sharp non-null output forces a sharp input.
TEST(FuzzyProperties, SharpOutputImpliesSharpInputForInjectiveMaps) {
  std::mt19937_64 rng(14);
  int checked = 0;
  for (FunctionId f : kAllFunctions) {
    if (!is_arithmetic(f) || !tables().map(f).injective()) continue;
    for (int n = 0; n < 300; ++n) {
      const StateTensor s = testing::random_mixture(kCfg, rng, 1 + n % 3);
      const StateTensor out = transform_fuzzy(f, s, tables());
      if (!is_sharp(out)) continue;
      ++checked;
      ASSERT_TRUE(is_sharp(s)) << function_name(f);
    }
  }
  EXPECT_GT(checked, 0);
}

// Collisions and list reducers break the converse: fuzzy inputs can map to
// sharp outputs.
TEST(FuzzyProperties, ConverseFailsForCollidingMapsAndReducers) {
  const StateTensor mixed =
      0.5 * encode(Value::list({2}), kCfg) + 0.5 * encode(Value::list({3}), kCfg);
  EXPECT_TRUE(is_sharp(transform_fuzzy(FunctionId::kDiv2, mixed, tables())));
  const StateTensor lists =
      0.5 * encode(Value::list({1, 2}), kCfg) + 0.5 * encode(Value::list({3, 2}), kCfg);
  EXPECT_TRUE(is_sharp(transform_fuzzy(FunctionId::kTail, lists, tables())));
  EXPECT_FALSE(is_sharp(lists));
}

TEST(AdjointTest, InnerProductIdentity) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> normal;
  for (FunctionId f : kAllFunctions) {
    for (int n = 0; n < 10; ++n) {
      StateTensor a(kCfg);
      for (double& x : a.data()) x = normal(rng);
      const StateTensor s = testing::random_column_state(kCfg, rng);
      const double lhs = testing::inner(transform_adjoint(f, a, tables()).data(), s.data());
      const double rhs = testing::inner(a.data(), transform_fuzzy(f, s, tables()).data());
      ASSERT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs))) << function_name(f);
    }
  }
}

TEST(AdjointTest, Plus1OfOnesGathersInRangeTargets) {
  StateTensor ones(kCfg);
  for (double& x : ones.data()) x = 1.0;
  const StateTensor out = transform_adjoint(FunctionId::kPlus1, ones, tables());
  const Layout lay = Layout::of(kCfg);
  for (int i = 0; i < lay.rows; ++i)
    for (int j = 0; j < lay.cols; ++j)
      for (int k = 0; k < lay.depth; ++k) {
        const bool hit = i >= 2 && j <= i - 2 && k + 1 <= lay.depth - 1;
        ASSERT_EQ(out(i, j, k), hit ? 1.0 : 0.0) << i << "," << j << "," << k;
      }
}

TEST(AdjointTest, ZeroMapsToZero) {
  EXPECT_EQ(transform_adjoint(FunctionId::kHead, StateTensor(kCfg), tables()), StateTensor(kCfg));
}

TEST(AdjointTest, ShapeMismatchThrows) {
  EXPECT_THROW(transform_adjoint(FunctionId::kHead, StateTensor(Config{-3, 3, 4}), tables()),
               ValidationError);
}

}  // namespace
}  // namespace fuzzysynth
