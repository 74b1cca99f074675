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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fuzzysynth/engine.hpp"
#include "fuzzysynth/sample.hpp"
#include "fuzzysynth/value.hpp"

namespace fuzzysynth {

// Token-similarity score as an exact integer ratio.
struct Score {
  long numerator = 0;
  long denominator = 0;

  double value() const {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / denominator;
  }
  Score& operator+=(const Score& o) {
    numerator += o.numerator;
    denominator += o.denominator;
    return *this;
  }
  friend bool operator==(const Score&, const Score&) = default;
};

// Per example: one credit for the right type (int vs list), one per position
// holding the right integer when the types agree; the denominator grows by
// 1 + max(len(predicted), len(truth)) with len(null) = 0 and len(int) = 1.
// Throws ValidationError on length mismatch or a null truth value.
Score score_outputs(std::span<const Value> predicted, std::span<const Value> truth);

// Score of `p` on the sample's assessment examples.
Score prediction_score(const Program& p, const Sample& sample, const Config& cfg);

// Fraction of samples whose program reproduces every observed example. The
// check reruns the concrete interpreter; the results' own flags are ignored.
// Throws ValidationError if the counts differ.
double eval_synthesis(std::span<const SynthesisResult> results, std::span<const Sample> samples,
                      const Config& cfg);

// Uniform random programs of the sample's length until one is consistent
// with the observed examples or the timeout expires; otherwise the
// best-scoring program seen. final_loss is 1 - observed score and
// restarts_used counts the programs drawn.
SynthesisResult random_search(const Sample& sample, const Config& cfg, double timeout_seconds,
                              std::mt19937_64& rng);

}  // namespace fuzzysynth
