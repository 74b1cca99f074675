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

#include "fuzzysynth/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "fuzzysynth/error.hpp"

namespace fuzzysynth {

namespace {

Score score_one(const Value& predicted, const Value& truth) {
  if (truth.is_null()) throw ValidationError("score_outputs: truth values are never null");
  Score s;
  s.denominator = 1 + std::max(predicted.token_length(), truth.token_length());
  if (predicted.kind() != truth.kind()) return s;
  s.numerator = 1;
  if (truth.is_int()) {
    s.numerator += predicted.as_int() == truth.as_int();
    return s;
  }
  const auto& p = predicted.as_list();
  const auto& t = truth.as_list();
  const std::size_t overlap = std::min(p.size(), t.size());
  for (std::size_t j = 0; j < overlap; ++j) s.numerator += p[j] == t[j];
  return s;
}

}  // namespace

Score score_outputs(std::span<const Value> predicted, std::span<const Value> truth) {
  if (predicted.size() != truth.size()) {
    throw ValidationError("score_outputs: " + std::to_string(predicted.size()) +
                          " predictions for " + std::to_string(truth.size()) + " outputs");
  }
  Score total;
  for (std::size_t n = 0; n < truth.size(); ++n) total += score_one(predicted[n], truth[n]);
  return total;
}

Score prediction_score(const Program& p, const Sample& sample, const Config& cfg) {
  std::vector<Value> predicted;
  std::vector<Value> truth;
  for (const Example& ex : sample.assessment) {
    predicted.push_back(execute(p, ex.input, cfg));
    truth.push_back(ex.output);
  }
  return score_outputs(predicted, truth);
}

double eval_synthesis(std::span<const SynthesisResult> results, std::span<const Sample> samples,
                      const Config& cfg) {
  if (results.size() != samples.size()) {
    throw ValidationError("eval_synthesis: " + std::to_string(results.size()) +
                          " results for " + std::to_string(samples.size()) + " samples");
  }
  if (samples.empty()) return 0.0;
  std::size_t solved = 0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    solved += consistent_with(results[n].program, samples[n].observed, cfg);
  }
  return static_cast<double>(solved) / static_cast<double>(samples.size());
}

SynthesisResult random_search(const Sample& sample, const Config& cfg, double timeout_seconds,
                              std::mt19937_64& rng) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (sample.length < 1) throw ValidationError("random_search: program length must be positive");

  std::vector<Value> truth;
  for (const Example& ex : sample.observed) truth.push_back(ex.output);

  std::uniform_int_distribution<int> any(0, kNumFunctions - 1);
  SynthesisResult best;
  double best_score = -1.0;
  std::vector<Value> predicted(truth.size());
  Program p(sample.length);
  for (std::uint64_t draws = 1;; ++draws) {
    for (FunctionId& f : p) f = function_at(any(rng));
    bool consistent = true;
    for (std::size_t n = 0; n < truth.size(); ++n) {
      predicted[n] = execute(p, sample.observed[n].input, cfg);
      consistent = consistent && predicted[n] == truth[n];
    }
    if (consistent) {
      best.program = p;
      best.consistent = true;
      best.final_loss = 0.0;
      best.restarts_used = static_cast<int>(std::min<std::uint64_t>(draws, INT32_MAX));
      break;
    }
    const double score = score_outputs(predicted, truth).value();
    if (score > best_score) {
      best_score = score;
      best.program = p;
      best.final_loss = 1.0 - score;
    }
    if (draws % 64 == 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() >= timeout_seconds) {
      best.restarts_used = static_cast<int>(std::min<std::uint64_t>(draws, INT32_MAX));
      break;
    }
  }
  best.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return best;
}

}  // namespace fuzzysynth
