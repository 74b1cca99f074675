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

#include <algorithm>
#include <numeric>
#include <random>

#include "fuzzysynth/dataset.hpp"
#include "fuzzysynth/error.hpp"
#include "fuzzysynth/evaluation.hpp"

namespace fuzzysynth {
namespace {

const Config kCfg;

Score score1(const Value& p, const Value& t) {
  const std::vector<Value> ps{p}, ts{t};
  return score_outputs(ps, ts);
}

TEST(ScoreTest, HandCheckedCases) {
  EXPECT_EQ(score1(Value::list({1, 2, 3}), Value::list({1, 2, 4})), (Score{3, 4}));
  EXPECT_DOUBLE_EQ(score1(Value::list({1, 2, 3}), Value::list({1, 2, 4})).value(), 0.75);
  EXPECT_EQ(score1(Value::null(), Value::list({7})), (Score{0, 2}));
  EXPECT_EQ(score1(Value::integer(5), Value::integer(5)), (Score{2, 2}));
  EXPECT_EQ(score1(Value::integer(4), Value::integer(5)), (Score{1, 2}));
  // Longer prediction: extra positions cost through the denominator.
  EXPECT_EQ(score1(Value::list({1, 2, 3, 9}), Value::list({1, 2})), (Score{3, 5}));
  EXPECT_EQ(score1(Value::list({1}), Value::list({1, 2, 3})), (Score{2, 4}));
  // Type mismatch: no credit even where a token coincides.
  EXPECT_EQ(score1(Value::integer(1), Value::list({1, 2})), (Score{0, 3}));
  EXPECT_EQ(score1(Value::list({5}), Value::integer(5)), (Score{0, 2}));
}

TEST(ScoreTest, SumsOverExamples) {
  const std::vector<Value> p = {Value::list({1, 2, 3}), Value::integer(5), Value::null()};
  const std::vector<Value> t = {Value::list({1, 2, 4}), Value::integer(5), Value::integer(1)};
  EXPECT_EQ(score_outputs(p, t), (Score{5, 8}));
}

TEST(ScoreTest, PerfectPredictionScoresOne) {
  std::vector<Value> t;
  for (int n = 0; n < 5; ++n) t.push_back(Value::list({n, -n, 2 * n}));
  EXPECT_DOUBLE_EQ(score_outputs(t, t).value(), 1.0);
}

TEST(ScoreTest, Errors) {
  const std::vector<Value> one{Value::integer(1)}, two{Value::integer(1), Value::integer(2)};
  EXPECT_THROW(score_outputs(one, two), ValidationError);
  const std::vector<Value> null_truth{Value::null()};
  EXPECT_THROW(score_outputs(one, null_truth), ValidationError);
}

TEST(ScoreProperties, BoundedAndPermutationInvariant) {
  std::mt19937_64 rng(1);
  DatasetSpec spec;
  spec.num_samples = 100;
  spec.program_length = 3;
  spec.examples_observed = 6;
  spec.seed = 2;
  for (const Sample& s : gen_dataset(spec, kCfg)) {
    std::vector<Value> p, t;
    for (const Example& ex : s.observed) {
      t.push_back(ex.output);
      p.push_back(execute(gen_program(3, rng), ex.input, kCfg));
    }
    const Score sc = score_outputs(p, t);
    EXPECT_GE(sc.numerator, 0);
    EXPECT_LE(sc.numerator, sc.denominator);
    EXPECT_GE(sc.denominator, static_cast<long>(t.size()));
    EXPECT_EQ(sc.value() == 1.0, p == t);
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Value> p2, t2;
    for (std::size_t i : order) {
      p2.push_back(p[i]);
      t2.push_back(t[i]);
    }
    EXPECT_EQ(score_outputs(p2, t2), sc);
  }
}

TEST(PredictionScoreTest, UsesAssessmentExamples) {
  Sample s;
  s.program = {FunctionId::kPlus1};
  s.length = 1;
  s.observed = {{Value::list({0}), Value::list({99})}};
  s.assessment = {{Value::list({1, 2}), Value::list({2, 3})}, {Value::list({4}), Value::list({0})}};
  EXPECT_EQ(prediction_score(s.program, s, kCfg), (Score{4, 5}));
}

TEST(EvalSynthesisTest, Fractions) {
  DatasetSpec spec;
  spec.num_samples = 4;
  spec.program_length = 2;
  spec.seed = 3;
  const auto samples = gen_dataset(spec, kCfg);
  std::vector<SynthesisResult> results(4);
  for (int n = 0; n < 4; ++n) results[n].program = samples[n].program;
  EXPECT_DOUBLE_EQ(eval_synthesis(results, samples, kCfg), 1.0);
  // The flag on the result is ignored; the interpreter decides.
  results[0].program = {FunctionId::kHead, FunctionId::kHead};
  results[0].consistent = true;
  EXPECT_DOUBLE_EQ(eval_synthesis(results, samples, kCfg), 0.75);
  for (auto& r : results) r.program = {FunctionId::kHead, FunctionId::kHead};
  EXPECT_DOUBLE_EQ(eval_synthesis(results, samples, kCfg), 0.0);
  results.pop_back();
  EXPECT_THROW(eval_synthesis(results, samples, kCfg), ValidationError);
}

TEST(EvalSynthesisTest, RatioFormat) {
  std::vector<Sample> samples(500);
  std::vector<SynthesisResult> results(500);
  for (int n = 0; n < 500; ++n) {
    samples[n].program = {FunctionId::kPlus1};
    samples[n].length = 1;
    samples[n].observed = {{Value::list({1}), Value::list({2})}};
    results[n].program = {n < 317 ? FunctionId::kPlus1 : FunctionId::kMinus1};
  }
  EXPECT_DOUBLE_EQ(eval_synthesis(results, samples, kCfg), 0.634);
}

TEST(RandomSearchTest, FindsLengthOnePrograms) {
  DatasetSpec spec;
  spec.num_samples = 20;
  spec.program_length = 1;
  spec.seed = 4;
  std::mt19937_64 rng(5);
  for (const Sample& s : gen_dataset(spec, kCfg)) {
    const SynthesisResult r = random_search(s, kCfg, 10.0, rng);
    EXPECT_TRUE(r.consistent);
    EXPECT_TRUE(consistent_with(r.program, s.observed, kCfg));
    EXPECT_LT(r.restarts_used, 1000);
  }
}

TEST(RandomSearchTest, ReturnsBestScoringOnTimeout) {
  // Noisy output no program of length 1 can produce.
  Sample s;
  s.program = {FunctionId::kPlus1};
  s.length = 1;
  s.observed = {{Value::list({3, 5}), Value::list({4, 77})}};
  std::mt19937_64 rng(6);
  const SynthesisResult r = random_search(s, kCfg, 0.05, rng);
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.program, Program{FunctionId::kPlus1});
  EXPECT_DOUBLE_EQ(r.final_loss, 1.0 - 2.0 / 3.0);
  EXPECT_GE(r.wall_time, 0.05);
}

TEST(RandomSearchTest, Throughput) {
  DatasetSpec spec;
  spec.num_samples = 1;
  spec.program_length = 8;
  spec.noise_prob = 1.0;
  spec.seed = 7;
  const Sample s = gen_dataset(spec, kCfg)[0];
  std::mt19937_64 rng(8);
  const SynthesisResult r = random_search(s, kCfg, 0.5, rng);
  if (!r.consistent) EXPECT_GT(r.restarts_used / r.wall_time, 500.0);
}

}  // namespace
}  // namespace fuzzysynth
