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

#include "fuzzysynth/value.hpp"

#include <ostream>
#include <sstream>

#include "fuzzysynth/error.hpp"

namespace fuzzysynth {

int Value::token_length() const {
  switch (kind()) {
    case Kind::kNull:
      return 0;
    case Kind::kInt:
      return 1;
    case Kind::kList:
      return static_cast<int>(as_list().size());
  }
  return 0;
}

std::string Value::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kNull:
      return os << "null";
    case Value::Kind::kInt:
      return os << v.as_int();
    case Value::Kind::kList: {
      os << '[';
      const char* sep = "";
      for (int x : v.as_list()) {
        os << sep << x;
        sep = ", ";
      }
      return os << ']';
    }
  }
  return os;
}

void validate_value(const Value& v, const Config& cfg) {
  if (v.is_int() && !cfg.in_range(v.as_int())) {
    throw ValidationError("integer " + std::to_string(v.as_int()) + " outside [" +
                          std::to_string(cfg.min_value) + ", " +
                          std::to_string(cfg.max_value) + "]");
  }
  if (v.is_list()) {
    const auto& xs = v.as_list();
    if (xs.empty()) throw ValidationError("empty list");
    if (static_cast<int>(xs.size()) > cfg.max_length) {
      throw ValidationError("list of length " + std::to_string(xs.size()) +
                            " exceeds max_length " + std::to_string(cfg.max_length));
    }
    for (int x : xs) {
      if (!cfg.in_range(x)) {
        throw ValidationError("list element " + std::to_string(x) + " out of range");
      }
    }
  }
}

bool is_valid_value(const Value& v, const Config& cfg) {
  try {
    validate_value(v, cfg);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

}  // namespace fuzzysynth
