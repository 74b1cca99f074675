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
#include <span>
#include <string>
#include <vector>

#include "fuzzysynth/config.hpp"
#include "fuzzysynth/value.hpp"

namespace fuzzysynth {

// Shape of one (L+2, L, d) state tensor. Row 0 is null, row 1 integers, row
// i >= 2 lists of length i - 1. Only columns j <= i - 2 of a list row are
// addressable; the rest is structural zero padding.
struct Layout {
  int rows = 0;
  int cols = 0;
  int depth = 0;

  static Layout of(const Config& cfg) {
    return {cfg.num_rows(), cfg.max_length, cfg.num_values()};
  }

  std::size_t size() const {
    return static_cast<std::size_t>(rows) * cols * depth;
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * cols + j) * depth + k;
  }
  // Whether (i, j, k) lies outside the zero padded region.
  bool addressable(int i, int j) const {
    if (i == 0 || i == 1) return j == 0;
    return j <= i - 2;
  }

  friend bool operator==(const Layout&, const Layout&) = default;
};

// Dense (L+2, L, d) tensor of doubles. Holds probability states and, in the
// gradient code, unconstrained adjoints of the same shape.
class StateTensor {
 public:
  StateTensor() = default;
  explicit StateTensor(Layout layout) : layout_(layout), data_(layout.size(), 0.0) {}
  explicit StateTensor(const Config& cfg) : StateTensor(Layout::of(cfg)) {}
  // Throws ValidationError on size mismatch.
  StateTensor(Layout layout, std::vector<double> data);

  const Layout& layout() const { return layout_; }
  std::size_t size() const { return data_.size(); }

  double operator()(int i, int j, int k) const { return data_[layout_.index(i, j, k)]; }
  double& at(int i, int j, int k) { return data_[layout_.index(i, j, k)]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  StateTensor& operator+=(const StateTensor& other);
  StateTensor& operator*=(double s);
  friend StateTensor operator*(double s, StateTensor t) { return t *= s; }
  friend StateTensor operator+(StateTensor a, const StateTensor& b) { return a += b; }

  friend bool operator==(const StateTensor&, const StateTensor&) = default;

 private:
  Layout layout_;
  std::vector<double> data_;
};

// The m examples of one sample stacked along a leading axis.
class BatchState {
 public:
  BatchState() = default;
  BatchState(Layout layout, int examples)
      : layout_(layout), examples_(examples), data_(layout.size() * examples, 0.0) {}

  static BatchState from_states(std::span<const StateTensor> states);

  const Layout& layout() const { return layout_; }
  int examples() const { return examples_; }

  std::span<const double> slice(int e) const {
    return std::span<const double>(data_).subspan(e * layout_.size(), layout_.size());
  }
  std::span<double> slice(int e) {
    return std::span<double>(data_).subspan(e * layout_.size(), layout_.size());
  }
  StateTensor example(int e) const;

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

 private:
  Layout layout_;
  int examples_ = 0;
  std::vector<double> data_;
};

// Sharp encoding of a value. Throws ValidationError for out-of-range values.
StateTensor encode(const Value& v, const Config& cfg);
BatchState encode_batch(std::span<const Value> values, const Config& cfg);

// Inverse of encode on sharp states. Throws ValidationError naming the first
// offending (row, column) when the tensor is not sharp.
Value decode_sharp(const StateTensor& s, const Config& cfg);

struct Index3 {
  int i = 0, j = 0, k = 0;
  friend bool operator==(const Index3&, const Index3&) = default;
};

struct ValidationReport {
  std::vector<Index3> structural_violations;
  std::vector<Index3> negative_entries;
  // Largest null + integer + one-column-per-list-row mass over all column
  // selections, and the smallest one.
  double max_mass = 0.0;
  double min_mass = 0.0;
  bool mass_violation = false;

  bool ok() const {
    return structural_violations.empty() && negative_entries.empty() && !mass_violation;
  }
  std::string summary() const;
};

inline constexpr double kMassTolerance = 1e-9;

ValidationReport validate(std::span<const double> data, const Layout& layout,
                          double tolerance = kMassTolerance);
inline ValidationReport validate(const StateTensor& s, double tolerance = kMassTolerance) {
  return validate(s.data(), s.layout(), tolerance);
}

bool is_sharp(const StateTensor& s);

}  // namespace fuzzysynth
