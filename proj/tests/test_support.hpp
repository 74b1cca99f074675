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

// Generators and independent oracles shared by the unit and acceptance
// suites. Nothing here calls the transform kernels.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <random>
#include <string>
#include <vector>

#include "fuzzysynth/config.hpp"
#include "fuzzysynth/dsl.hpp"
#include "fuzzysynth/state.hpp"
#include "fuzzysynth/value.hpp"

namespace fuzzysynth::testing {

// Random value: mostly lists, some integers and nulls. Half of the lists use
// small elements so that multiplicative functions stay in range.
inline Value random_value(const Config& cfg, std::mt19937_64& rng, bool allow_scalars = true) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> full(cfg.min_value, cfg.max_value);
  std::uniform_int_distribution<int> small(std::max(cfg.min_value, -10), std::min(cfg.max_value, 10));
  const double pick = u(rng);
  if (allow_scalars && pick < 0.05) return Value::null();
  if (allow_scalars && pick < 0.2) return Value::integer(full(rng));
  std::uniform_int_distribution<int> len(1, cfg.max_length);
  Value::List xs(len(rng));
  const bool use_small = u(rng) < 0.5;
  for (int& x : xs) x = use_small ? small(rng) : full(rng);
  return Value::list(std::move(xs));
}

// Convex combination of `terms` random sharp states.
inline StateTensor random_mixture(const Config& cfg, std::mt19937_64& rng, int terms) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> w(terms);
  double total = 0.0;
  for (double& x : w) total += (x = g(rng));
  StateTensor s(cfg);
  for (int n = 0; n < terms; ++n) s += (w[n] / total) * encode(random_value(cfg, rng), cfg);
  return s;
}

// Independent per-column fuzzy state with max column-selection mass <= 1:
// row weights sum to at most one and every column's mass is at most its
// row weight.
inline StateTensor random_column_state(const Config& cfg, std::mt19937_64& rng) {
  const Layout lay = Layout::of(cfg);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> row_w(lay.rows);
  double total = 0.0;
  for (double& x : row_w) total += (x = -std::log(1.0 - u(rng)));
  const double scale = u(rng) / total;  // total row weight in [0, 1)
  StateTensor s(cfg);
  for (int i = 0; i < lay.rows; ++i) {
    for (int j = 0; j < lay.cols; ++j) {
      if (!lay.addressable(i, j)) continue;
      const double col_mass = row_w[i] * scale * u(rng);
      if (i == 0) {
        s.at(0, 0, 0) = col_mass;
        continue;
      }
      std::vector<double> p(lay.depth);
      double z = 0.0;
      for (double& x : p) z += (x = u(rng) < 0.1 ? u(rng) : 0.0);
      if (z == 0.0) continue;
      for (int k = 0; k < lay.depth; ++k) s.at(i, j, k) = col_mass * p[k] / z;
    }
  }
  return s;
}

// Element-wise integer maps written out independently of the library.
inline std::int64_t oracle_map(const std::string& name, std::int64_t x) {
  if (name == "plus1") return x + 1;
  if (name == "minus1") return x - 1;
  if (name == "times2") return x * 2;
  if (name == "times3") return x * 3;
  if (name == "times4") return x * 4;
  if (name == "timesm1") return -x;
  if (name == "power2") return x * x;
  // Truncation toward zero, spelled out.
  auto div = [](std::int64_t a, std::int64_t q) {
    const std::int64_t m = (a < 0 ? -a : a) / q;
    return a < 0 ? -m : m;
  };
  if (name == "div2") return div(x, 2);
  if (name == "div3") return div(x, 3);
  if (name == "div4") return div(x, 4);
  throw std::logic_error("oracle_map: " + name);
}

// Value under element-wise overflow: an element that leaves the range
// disappears from its position instead of nullifying the whole list. This is
// the per-position semantics of the fuzzy transforms; it agrees with the
// concrete interpreter whenever nothing overflows.
struct PartialValue {
  enum class Kind { kNull, kInt, kList } kind = Kind::kNull;
  int integer = 0;
  std::vector<std::optional<int>> elems;
};

inline PartialValue to_partial(const Value& v) {
  PartialValue p;
  if (v.is_int()) {
    p.kind = PartialValue::Kind::kInt;
    p.integer = v.as_int();
  } else if (v.is_list()) {
    p.kind = PartialValue::Kind::kList;
    for (int x : v.as_list()) p.elems.emplace_back(x);
  }
  return p;
}

inline PartialValue partial_apply(FunctionId f, const PartialValue& v, const Config& cfg) {
  PartialValue out;
  if (v.kind != PartialValue::Kind::kList) return out;
  const std::string name(function_name(f));
  if (name == "head" || name == "tail") {
    const auto& e = name == "head" ? v.elems.front() : v.elems.back();
    if (!e) return out;
    out.kind = PartialValue::Kind::kInt;
    out.integer = *e;
    return out;
  }
  out.kind = PartialValue::Kind::kList;
  for (const auto& e : v.elems) {
    if (!e) {
      out.elems.emplace_back();
      continue;
    }
    const std::int64_t y = oracle_map(name, *e);
    if (y < cfg.min_value || y > cfg.max_value) {
      out.elems.emplace_back();
    } else {
      out.elems.emplace_back(static_cast<int>(y));
    }
  }
  return out;
}

// Adds weight * encoding of `v` into `slice`; null contributes nothing.
inline void add_partial(const PartialValue& v, double weight, const Config& cfg,
                        std::span<double> slice) {
  const Layout lay = Layout::of(cfg);
  if (v.kind == PartialValue::Kind::kInt) {
    slice[lay.index(1, 0, v.integer - cfg.min_value)] += weight;
  } else if (v.kind == PartialValue::Kind::kList) {
    const int row = static_cast<int>(v.elems.size()) + 1;
    for (int j = 0; j < static_cast<int>(v.elems.size()); ++j) {
      if (v.elems[j]) slice[lay.index(row, j, *v.elems[j] - cfg.min_value)] += weight;
    }
  }
}

// Brute-force Psi_(T): every one of the 12^T programs run separately and
// weighted by the product of its step probabilities.
inline BatchState enumerate_superposition(std::span<const double> probs, int steps,
                                          std::span<const Value> inputs, const Config& cfg) {
  BatchState out(Layout::of(cfg), static_cast<int>(inputs.size()));
  std::vector<int> digits(steps, 0);
  while (true) {
    double weight = 1.0;
    for (int t = 0; t < steps; ++t) weight *= probs[t * kNumFunctions + digits[t]];
    for (std::size_t e = 0; e < inputs.size(); ++e) {
      PartialValue v = to_partial(inputs[e]);
      for (int t = 0; t < steps; ++t) v = partial_apply(function_at(digits[t]), v, cfg);
      add_partial(v, weight, cfg, out.slice(static_cast<int>(e)));
    }
    int t = 0;
    while (t < steps && ++digits[t] == kNumFunctions) digits[t++] = 0;
    if (t == steps) break;
  }
  return out;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

inline double inner(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * b[n];
  return s;
}

}  // namespace fuzzysynth::testing
