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

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "fuzzysynth/config.hpp"

namespace fuzzysynth {

// A concrete DSL value: null, a bounded integer, or a non-empty list of
// bounded integers.
class Value {
 public:
  using List = std::vector<int>;
  enum class Kind { kNull, kInt, kList };

  Value() = default;  // null

  static Value null() { return Value(); }
  static Value integer(int k) { return Value(Storage(std::in_place_index<1>, k)); }
  static Value list(List elems) {
    return Value(Storage(std::in_place_index<2>, std::move(elems)));
  }

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_null() const { return kind() == Kind::kNull; }
  bool is_int() const { return kind() == Kind::kInt; }
  bool is_list() const { return kind() == Kind::kList; }

  // Precondition: matching kind.
  int as_int() const { return std::get<1>(v_); }
  const List& as_list() const { return std::get<2>(v_); }

  // Token count used by scoring: 0 for null, 1 for an integer, list length.
  int token_length() const;

  std::string to_string() const;

  friend bool operator==(const Value&, const Value&) = default;

 private:
  using Storage = std::variant<std::monostate, int, List>;
  explicit Value(Storage v) : v_(std::move(v)) {}

  Storage v_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

// Throws ValidationError if `v` violates the bounds of `cfg`.
void validate_value(const Value& v, const Config& cfg);
bool is_valid_value(const Value& v, const Config& cfg);

}  // namespace fuzzysynth
