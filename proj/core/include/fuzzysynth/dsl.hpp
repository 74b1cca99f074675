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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzysynth/config.hpp"
#include "fuzzysynth/state.hpp"
#include "fuzzysynth/value.hpp"

namespace fuzzysynth {

// Canonical order. Policy columns, program files and logits files all index
// functions by this enum's underlying value.
enum class FunctionId : std::uint8_t {
  kHead,
  kTail,
  kPlus1,
  kMinus1,
  kTimes2,
  kTimes3,
  kTimes4,
  kTimesM1,
  kPower2,
  kDiv2,
  kDiv3,
  kDiv4,
};

inline constexpr std::array<FunctionId, kNumFunctions> kAllFunctions = {
    FunctionId::kHead,   FunctionId::kTail,   FunctionId::kPlus1,  FunctionId::kMinus1,
    FunctionId::kTimes2, FunctionId::kTimes3, FunctionId::kTimes4, FunctionId::kTimesM1,
    FunctionId::kPower2, FunctionId::kDiv2,   FunctionId::kDiv3,   FunctionId::kDiv4,
};

constexpr int index_of(FunctionId f) { return static_cast<int>(f); }
constexpr FunctionId function_at(int s) { return static_cast<FunctionId>(s); }
constexpr bool is_arithmetic(FunctionId f) {
  return f != FunctionId::kHead && f != FunctionId::kTail;
}

std::string_view function_name(FunctionId f);
std::optional<FunctionId> parse_function(std::string_view name);
// Canonical lowercase names in enum order.
std::vector<std::string> function_names();

// Element-wise integer map of an arithmetic function on unbounded integers.
// Division truncates toward zero.
std::int64_t apply_elementwise(FunctionId f, std::int64_t x);

using Program = std::vector<FunctionId>;

std::string program_to_string(const Program& p);

// Concrete interpreter. Null and integer inputs map to null; an arithmetic
// function that sends any list element out of range yields null.
Value apply_concrete(FunctionId f, const Value& v, const Config& cfg);
Value execute(const Program& p, Value v, const Config& cfg);

// Index map sigma of an arithmetic function over value indices 0..d-1;
// kOutOfRange marks sources whose image leaves the representable range.
class IndexMap {
 public:
  static constexpr int kOutOfRange = -1;

  IndexMap(FunctionId f, const Config& cfg);

  FunctionId function() const { return f_; }
  int operator[](int k) const { return target_[k]; }
  std::span<const int> targets() const { return target_; }
  bool injective() const { return injective_; }

 private:
  FunctionId f_;
  std::vector<int> target_;
  bool injective_ = true;
};

// Precomputed index maps for one Config. Immutable and shareable.
class FunctionTables {
 public:
  explicit FunctionTables(const Config& cfg);

  const Config& config() const { return cfg_; }
  const Layout& layout() const { return layout_; }
  // Precondition: is_arithmetic(f).
  const IndexMap& map(FunctionId f) const { return maps_[index_of(f) - 2]; }

 private:
  Config cfg_;
  Layout layout_;
  std::vector<IndexMap> maps_;
};

// Linear action of f on a (possibly fuzzy) state. head and tail collect the
// first or last list element into the integer row; arithmetic functions
// move list mass along the value axis and drop out-of-range mass. The null
// row of the output is always zero. Throws ValidationError if `s` is invalid.
StateTensor transform_fuzzy(FunctionId f, const StateTensor& s, const FunctionTables& tables);

// Transpose of transform_fuzzy: <transform_adjoint(f, a), s> equals
// <a, transform_fuzzy(f, s)> for every s. `a` is unconstrained.
StateTensor transform_adjoint(FunctionId f, const StateTensor& a, const FunctionTables& tables);

// Raw accumulation kernels used by the optimizer. Only the list rows named in
// `list_rows` (each >= 2) are read; callers own buffer zeroing.
namespace kernel {

// out += weight * f(in)
void forward_accumulate(FunctionId f, const FunctionTables& tables, std::span<const double> in,
                        std::span<double> out, double weight, std::span<const int> list_rows);

// out += weight * f^T(adj); returns <f^T(adj), primal>, i.e. <adj, f(primal)>.
double adjoint_accumulate(FunctionId f, const FunctionTables& tables,
                          std::span<const double> adj, std::span<const double> primal,
                          std::span<double> out, double weight, std::span<const int> list_rows);

// All list rows 2..L+1.
std::vector<int> all_list_rows(const Layout& layout);
// List rows carrying nonzero mass in `state`.
std::vector<int> occupied_list_rows(const Layout& layout, std::span<const double> state);

}  // namespace kernel

}  // namespace fuzzysynth
