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

#include <cstddef>
#include <cstdint>

namespace fuzzysynth {

// Number of DSL functions; fixed by the function table in dsl.hpp.
inline constexpr int kNumFunctions = 12;

// Value-domain configuration shared by every module. Program length and the
// number of examples are per task and live with the task, not here.
struct Config {
  int min_value = -100;
  int max_value = 100;
  int max_length = 10;

  // d: number of representable integers.
  int num_values() const { return max_value - min_value + 1; }
  // L + 2: null row, integer row, one row per list length.
  int num_rows() const { return max_length + 2; }
  std::size_t state_size() const {
    return static_cast<std::size_t>(num_rows()) * max_length * num_values();
  }

  bool in_range(std::int64_t v) const { return v >= min_value && v <= max_value; }

  // Throws ValidationError when min > max or max_length < 1.
  void validate() const;

  friend bool operator==(const Config&, const Config&) = default;
};

}  // namespace fuzzysynth
