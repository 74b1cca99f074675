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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzysynth/engine.hpp"

namespace fuzzysynth {

// Logit initialization file, shared with the network that predicts starting
// points:
//   {"T": 3, "n": 12, "functions": ["head", ..., "div4"], "logits": [[...], ...]}
// `functions` must list the canonical names in canonical order.
std::string logits_to_json(const PolicyMatrix& pi);
// Throws ParseError on malformed content or a T/n/order mismatch. When
// `expected_steps` is set, T must equal it.
PolicyMatrix logits_from_json(std::string_view text, std::optional<int> expected_steps = {});

void write_logits(const std::filesystem::path& path, const PolicyMatrix& pi);
PolicyMatrix read_logits(const std::filesystem::path& path,
                         std::optional<int> expected_steps = {});

// One results line per sample.
struct ResultRecord {
  std::size_t index = 0;
  SynthesisResult result;
};

std::string result_to_line(const ResultRecord& r);
ResultRecord result_from_line(std::string_view line, std::size_t line_no = 0);

void write_results(const std::filesystem::path& path, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_results(const std::filesystem::path& path);

}  // namespace fuzzysynth
