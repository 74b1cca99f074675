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

#include "fuzzysynth/state.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "fuzzysynth/error.hpp"

namespace fuzzysynth {

StateTensor::StateTensor(Layout layout, std::vector<double> data)
    : layout_(layout), data_(std::move(data)) {
  if (data_.size() != layout_.size()) {
    throw ValidationError("state tensor: expected " + std::to_string(layout_.size()) +
                          " entries, got " + std::to_string(data_.size()));
  }
}

StateTensor& StateTensor::operator+=(const StateTensor& other) {
  if (!(layout_ == other.layout_)) throw ValidationError("state tensor: shape mismatch");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

StateTensor& StateTensor::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

BatchState BatchState::from_states(std::span<const StateTensor> states) {
  if (states.empty()) return {};
  BatchState batch(states.front().layout(), static_cast<int>(states.size()));
  for (std::size_t e = 0; e < states.size(); ++e) {
    if (!(states[e].layout() == batch.layout())) {
      throw ValidationError("batch state: examples differ in shape");
    }
    std::ranges::copy(states[e].data(), batch.slice(static_cast<int>(e)).begin());
  }
  return batch;
}

StateTensor BatchState::example(int e) const {
  auto s = slice(e);
  return StateTensor(layout_, std::vector<double>(s.begin(), s.end()));
}

StateTensor encode(const Value& v, const Config& cfg) {
  validate_value(v, cfg);
  StateTensor s(cfg);
  switch (v.kind()) {
    case Value::Kind::kNull:
      s.at(0, 0, 0) = 1.0;
      break;
    case Value::Kind::kInt:
      s.at(1, 0, v.as_int() - cfg.min_value) = 1.0;
      break;
    case Value::Kind::kList: {
      const auto& xs = v.as_list();
      const int row = static_cast<int>(xs.size()) + 1;
      for (int j = 0; j < static_cast<int>(xs.size()); ++j) {
        s.at(row, j, xs[j] - cfg.min_value) = 1.0;
      }
      break;
    }
  }
  return s;
}

BatchState encode_batch(std::span<const Value> values, const Config& cfg) {
  BatchState batch(Layout::of(cfg), static_cast<int>(values.size()));
  for (std::size_t e = 0; e < values.size(); ++e) {
    StateTensor s = encode(values[e], cfg);
    std::ranges::copy(s.data(), batch.slice(static_cast<int>(e)).begin());
  }
  return batch;
}

namespace {

std::string column_name(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

// Returns the one-hot position of column (i, j), or an error message.
std::optional<int> one_hot_column(const StateTensor& s, int i, int j, std::string& err) {
  const int depth = s.layout().depth;
  int hot = -1;
  for (int k = 0; k < depth; ++k) {
    const double x = s(i, j, k);
    if (x == 0.0) continue;
    if (x != 1.0 || hot >= 0) {
      err = "column " + column_name(i, j) + " is not one-hot";
      return std::nullopt;
    }
    hot = k;
  }
  if (hot < 0) {
    err = "column " + column_name(i, j) + " is empty";
    return std::nullopt;
  }
  return hot;
}

bool column_is_zero(const StateTensor& s, int i, int j) {
  for (int k = 0; k < s.layout().depth; ++k) {
    if (s(i, j, k) != 0.0) return false;
  }
  return true;
}

// Decodes the sharp pattern as raw indices; value offsets are applied by the
// caller. On failure `err` names the first offending column.
std::optional<Value> decode_indices(const StateTensor& s, std::string& err) {
  const Layout& lay = s.layout();
  int occupied = -1;
  for (int i = 0; i < lay.rows && occupied < 0; ++i) {
    for (int j = 0; j < lay.cols; ++j) {
      if (!column_is_zero(s, i, j)) {
        occupied = i;
        break;
      }
    }
  }
  if (occupied < 0) {
    err = "tensor is all zero";
    return std::nullopt;
  }
  // Every other row and every padded column must be empty.
  for (int i = 0; i < lay.rows; ++i) {
    for (int j = 0; j < lay.cols; ++j) {
      const bool expected = i == occupied && lay.addressable(i, j);
      if (!expected && !column_is_zero(s, i, j)) {
        err = "column " + column_name(i, j) + " should be empty";
        return std::nullopt;
      }
    }
  }
  if (occupied == 0) {
    auto hot = one_hot_column(s, 0, 0, err);
    if (!hot) return std::nullopt;
    if (*hot != 0) {
      err = "column (0, 0) must hold its mass at k = 0";
      return std::nullopt;
    }
    return Value::null();
  }
  if (occupied == 1) {
    auto hot = one_hot_column(s, 1, 0, err);
    if (!hot) return std::nullopt;
    return Value::integer(*hot);
  }
  Value::List xs;
  for (int j = 0; j <= occupied - 2; ++j) {
    auto hot = one_hot_column(s, occupied, j, err);
    if (!hot) return std::nullopt;
    xs.push_back(*hot);
  }
  return Value::list(std::move(xs));
}

}  // namespace

Value decode_sharp(const StateTensor& s, const Config& cfg) {
  if (!(s.layout() == Layout::of(cfg))) {
    throw ValidationError("decode_sharp: tensor shape does not match config");
  }
  std::string err;
  auto raw = decode_indices(s, err);
  if (!raw) throw ValidationError("decode_sharp: not a sharp state: " + err);
  switch (raw->kind()) {
    case Value::Kind::kNull:
      return *raw;
    case Value::Kind::kInt:
      return Value::integer(raw->as_int() + cfg.min_value);
    case Value::Kind::kList: {
      Value::List xs = raw->as_list();
      for (int& x : xs) x += cfg.min_value;
      return Value::list(std::move(xs));
    }
  }
  return *raw;
}

bool is_sharp(const StateTensor& s) {
  std::string err;
  return decode_indices(s, err).has_value();
}

ValidationReport validate(std::span<const double> data, const Layout& lay, double tolerance) {
  if (data.size() != lay.size()) {
    throw ValidationError("validate: expected " + std::to_string(lay.size()) +
                          " entries, got " + std::to_string(data.size()));
  }
  ValidationReport report;
  double row_max_sum = 0.0;
  double row_min_sum = 0.0;
  for (int i = 0; i < lay.rows; ++i) {
    double col_max = 0.0;
    double col_min = 0.0;
    bool first = true;
    for (int j = 0; j < lay.cols; ++j) {
      const bool open = lay.addressable(i, j);
      double col_sum = 0.0;
      for (int k = 0; k < lay.depth; ++k) {
        const double x = data[lay.index(i, j, k)];
        if (x < 0.0) report.negative_entries.push_back({i, j, k});
        // The null row only carries mass at (0, 0, 0).
        const bool zero_required = !open || (i == 0 && k != 0);
        if (zero_required) {
          if (x != 0.0) report.structural_violations.push_back({i, j, k});
          continue;
        }
        col_sum += x;
      }
      if (!open) continue;
      col_max = first ? col_sum : std::max(col_max, col_sum);
      col_min = first ? col_sum : std::min(col_min, col_sum);
      first = false;
    }
    row_max_sum += col_max;
    row_min_sum += col_min;
  }
  report.max_mass = row_max_sum;
  report.min_mass = row_min_sum;
  report.mass_violation = report.max_mass > 1.0 + tolerance;
  return report;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  if (ok()) {
    os << "valid (max mass " << max_mass << ")";
    return os.str();
  }
  const char* sep = "";
  if (!structural_violations.empty()) {
    const auto& v = structural_violations.front();
    os << structural_violations.size() << " structural-zero violation(s), first at (" << v.i
       << ", " << v.j << ", " << v.k << ")";
    sep = "; ";
  }
  if (!negative_entries.empty()) {
    const auto& v = negative_entries.front();
    os << sep << negative_entries.size() << " negative entr(ies), first at (" << v.i << ", "
       << v.j << ", " << v.k << ")";
    sep = "; ";
  }
  if (mass_violation) os << sep << "mass bound exceeded: " << max_mass;
  return os.str();
}

}  // namespace fuzzysynth
