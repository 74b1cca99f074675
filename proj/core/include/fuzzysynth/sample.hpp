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

#include <vector>

#include "fuzzysynth/dsl.hpp"
#include "fuzzysynth/value.hpp"

namespace fuzzysynth {

struct Example {
  Value input;
  Value output;

  friend bool operator==(const Example&, const Example&) = default;
};

// I/O examples produced by one ground-truth program. Observed examples drive
// synthesis; assessment examples, when present, score output prediction.
struct Sample {
  std::vector<Example> observed;
  std::vector<Example> assessment;
  Program program;
  int length = 0;
  double noise = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

// True iff `p` maps every input in `examples` to its output exactly.
bool consistent_with(const Program& p, const std::vector<Example>& examples, const Config& cfg);

}  // namespace fuzzysynth
