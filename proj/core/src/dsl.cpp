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

#include "fuzzysynth/dsl.hpp"

#include <sstream>

#include "fuzzysynth/error.hpp"

namespace fuzzysynth {

namespace {

constexpr std::array<std::string_view, kNumFunctions> kNames = {
    "head",  "tail",  "plus1",   "minus1", "times2", "times3",
    "times4", "timesm1", "power2", "div2",   "div3",   "div4",
};

}  // namespace

std::string_view function_name(FunctionId f) { return kNames[index_of(f)]; }

std::optional<FunctionId> parse_function(std::string_view name) {
  for (int s = 0; s < kNumFunctions; ++s) {
    if (kNames[s] == name) return function_at(s);
  }
  return std::nullopt;
}

std::vector<std::string> function_names() {
  return std::vector<std::string>(kNames.begin(), kNames.end());
}

std::int64_t apply_elementwise(FunctionId f, std::int64_t x) {
  switch (f) {
    case FunctionId::kPlus1:
      return x + 1;
    case FunctionId::kMinus1:
      return x - 1;
    case FunctionId::kTimes2:
      return 2 * x;
    case FunctionId::kTimes3:
      return 3 * x;
    case FunctionId::kTimes4:
      return 4 * x;
    case FunctionId::kTimesM1:
      return -x;
    case FunctionId::kPower2:
      return x * x;
    case FunctionId::kDiv2:
      return x / 2;
    case FunctionId::kDiv3:
      return x / 3;
    case FunctionId::kDiv4:
      return x / 4;
    case FunctionId::kHead:
    case FunctionId::kTail:
      break;
  }
  throw ValidationError("apply_elementwise: " + std::string(function_name(f)) +
                        " is not element-wise");
}

std::string program_to_string(const Program& p) {
  std::ostringstream os;
  const char* sep = "";
  for (FunctionId f : p) {
    os << sep << function_name(f);
    sep = " ";
  }
  return os.str();
}

Value apply_concrete(FunctionId f, const Value& v, const Config& cfg) {
  if (!v.is_list()) return Value::null();
  const auto& xs = v.as_list();
  if (f == FunctionId::kHead) return Value::integer(xs.front());
  if (f == FunctionId::kTail) return Value::integer(xs.back());
  Value::List out;
  out.reserve(xs.size());
  for (int x : xs) {
    const std::int64_t y = apply_elementwise(f, x);
    if (!cfg.in_range(y)) return Value::null();
    out.push_back(static_cast<int>(y));
  }
  return Value::list(std::move(out));
}

Value execute(const Program& p, Value v, const Config& cfg) {
  for (FunctionId f : p) {
    if (v.is_null()) break;
    v = apply_concrete(f, v, cfg);
  }
  return v;
}

IndexMap::IndexMap(FunctionId f, const Config& cfg) : f_(f) {
  if (!is_arithmetic(f)) {
    throw ValidationError("IndexMap: " + std::string(function_name(f)) + " has no index map");
  }
  const int d = cfg.num_values();
  target_.resize(d);
  std::vector<char> hit(d, 0);
  for (int k = 0; k < d; ++k) {
    const std::int64_t y = apply_elementwise(f, static_cast<std::int64_t>(k) + cfg.min_value);
    if (!cfg.in_range(y)) {
      target_[k] = kOutOfRange;
      continue;
    }
    const int t = static_cast<int>(y - cfg.min_value);
    target_[k] = t;
    if (hit[t]) injective_ = false;
    hit[t] = 1;
  }
}

FunctionTables::FunctionTables(const Config& cfg) : cfg_(cfg), layout_(Layout::of(cfg)) {
  cfg.validate();
  maps_.reserve(kNumFunctions - 2);
  for (FunctionId f : kAllFunctions) {
    if (is_arithmetic(f)) maps_.emplace_back(f, cfg);
  }
}

namespace kernel {

std::vector<int> all_list_rows(const Layout& layout) {
  std::vector<int> rows;
  for (int i = 2; i < layout.rows; ++i) rows.push_back(i);
  return rows;
}

std::vector<int> occupied_list_rows(const Layout& layout, std::span<const double> state) {
  std::vector<int> rows;
  for (int i = 2; i < layout.rows; ++i) {
    const auto row = state.subspan(layout.index(i, 0, 0),
                                   static_cast<std::size_t>(i - 1) * layout.depth);
    for (double x : row) {
      if (x != 0.0) {
        rows.push_back(i);
        break;
      }
    }
  }
  return rows;
}

void forward_accumulate(FunctionId f, const FunctionTables& tables, std::span<const double> in,
                        std::span<double> out, double weight, std::span<const int> list_rows) {
  const Layout& lay = tables.layout();
  const int d = lay.depth;
  if (!is_arithmetic(f)) {
    double* dst = out.data() + lay.index(1, 0, 0);
    for (int i : list_rows) {
      const int j = f == FunctionId::kHead ? 0 : i - 2;
      const double* src = in.data() + lay.index(i, j, 0);
      for (int k = 0; k < d; ++k) dst[k] += weight * src[k];
    }
    return;
  }
  const int* sigma = tables.map(f).targets().data();
  for (int i : list_rows) {
    for (int j = 0; j <= i - 2; ++j) {
      const std::size_t base = lay.index(i, j, 0);
      const double* src = in.data() + base;
      double* dst = out.data() + base;
      for (int k = 0; k < d; ++k) {
        const int t = sigma[k];
        if (t >= 0) dst[t] += weight * src[k];
      }
    }
  }
}

double adjoint_accumulate(FunctionId f, const FunctionTables& tables,
                          std::span<const double> adj, std::span<const double> primal,
                          std::span<double> out, double weight, std::span<const int> list_rows) {
  const Layout& lay = tables.layout();
  const int d = lay.depth;
  // An empty `out` requests the inner product only.
  const bool write = !out.empty() && weight != 0.0;
  double dot = 0.0;
  if (!is_arithmetic(f)) {
    const double* a = adj.data() + lay.index(1, 0, 0);
    for (int i : list_rows) {
      const int j = f == FunctionId::kHead ? 0 : i - 2;
      const std::size_t base = lay.index(i, j, 0);
      const double* p = primal.data() + base;
      for (int k = 0; k < d; ++k) dot += a[k] * p[k];
      if (!write) continue;
      double* dst = out.data() + base;
      for (int k = 0; k < d; ++k) dst[k] += weight * a[k];
    }
    return dot;
  }
  const int* sigma = tables.map(f).targets().data();
  for (int i : list_rows) {
    for (int j = 0; j <= i - 2; ++j) {
      const std::size_t base = lay.index(i, j, 0);
      const double* a = adj.data() + base;
      const double* p = primal.data() + base;
      if (!write) {
        for (int k = 0; k < d; ++k) {
          const int t = sigma[k];
          if (t >= 0) dot += a[t] * p[k];
        }
        continue;
      }
      double* dst = out.data() + base;
      for (int k = 0; k < d; ++k) {
        const int t = sigma[k];
        if (t < 0) continue;
        dot += a[t] * p[k];
        dst[k] += weight * a[t];
      }
    }
  }
  return dot;
}

}  // namespace kernel

StateTensor transform_fuzzy(FunctionId f, const StateTensor& s, const FunctionTables& tables) {
  if (!(s.layout() == tables.layout())) {
    throw ValidationError("transform_fuzzy: tensor shape does not match config");
  }
  const ValidationReport report = validate(s);
  if (!report.ok()) throw ValidationError("transform_fuzzy: invalid state: " + report.summary());
  StateTensor out(tables.layout());
  const auto rows = kernel::all_list_rows(tables.layout());
  kernel::forward_accumulate(f, tables, s.data(), out.data(), 1.0, rows);
  return out;
}

StateTensor transform_adjoint(FunctionId f, const StateTensor& a, const FunctionTables& tables) {
  if (!(a.layout() == tables.layout())) {
    throw ValidationError("transform_adjoint: tensor shape does not match config");
  }
  StateTensor out(tables.layout());
  const auto rows = kernel::all_list_rows(tables.layout());
  // The primal is irrelevant here; pass the adjoint to satisfy the kernel.
  kernel::adjoint_accumulate(f, tables, a.data(), a.data(), out.data(), 1.0, rows);
  return out;
}

}  // namespace fuzzysynth
