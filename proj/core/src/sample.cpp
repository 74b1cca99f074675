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

#include "fuzzysynth/sample.hpp"

namespace fuzzysynth {

bool consistent_with(const Program& p, const std::vector<Example>& examples, const Config& cfg) {
  for (const Example& ex : examples) {
    if (execute(p, ex.input, cfg) != ex.output) return false;
  }
  return true;
}

}  // namespace fuzzysynth
