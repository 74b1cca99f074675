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

#include "fuzzysynth/config.hpp"

#include <string>

#include "fuzzysynth/error.hpp"

namespace fuzzysynth {

void Config::validate() const {
  if (min_value > max_value) {
    throw ValidationError("config: min_value " + std::to_string(min_value) +
                          " exceeds max_value " + std::to_string(max_value));
  }
  if (max_length < 1) {
    throw ValidationError("config: max_length must be positive");
  }
}

}  // namespace fuzzysynth
