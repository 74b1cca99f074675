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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzysynth/config.hpp"
#include "fuzzysynth/dsl.hpp"
#include "fuzzysynth/error.hpp"
#include "fuzzysynth/sample.hpp"

namespace fuzzysynth {

// Sample generation gave up; the message names the last program tried.
class GenerationError : public Error {
 public:
  using Error::Error;
};

struct DatasetSpec {
  int num_samples = 0;
  int program_length = 1;
  int examples_observed = 5;
  int examples_assessment = 0;
  double noise_prob = 0.0;
  std::uint64_t seed = 0;
  // Training data noises every output; test data only observed outputs.
  bool noise_all_outputs = false;

  void validate() const;
};

inline constexpr int kGenerationAttempts = 10000;

// Uniform program of the given length. head and tail appear only as the last
// function, since anywhere earlier they force a null result.
Program gen_program(int length, std::mt19937_64& rng);

// Uniform list: length in 1..L, elements in [min_value, max_value].
Value gen_input(const Config& cfg, std::mt19937_64& rng);

// Draws `count` inputs for which `p` yields a non-null output, redrawing
// rejected inputs. Returns nullopt once `attempts` draws are spent.
std::optional<std::vector<Example>> gen_examples(const Program& p, int count, const Config& cfg,
                                                 std::mt19937_64& rng,
                                                 int attempts = kGenerationAttempts);

// Program plus examples, noised per `spec`. Throws GenerationError after
// kGenerationAttempts rejected input draws.
Sample gen_sample(const DatasetSpec& spec, const Config& cfg, std::mt19937_64& rng);

// Replaces every integer token independently with probability p by a
// uniform integer; type and length are preserved. Throws ValidationError for
// null values or p outside [0, 1].
Value inject_noise(const Value& v, double p, const Config& cfg, std::mt19937_64& rng);

// Per-sample generator seeded from (seed, index), so samples can be produced
// in any order or in parallel.
std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t index);

std::vector<Sample> gen_dataset(const DatasetSpec& spec, const Config& cfg);

// Provenance header written as the first line of a dataset file.
struct DatasetHeader {
  Config config;
  int program_length = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  int examples_observed = 0;
  int examples_assessment = 0;
  std::size_t num_samples = 0;
};

struct Dataset {
  std::optional<DatasetHeader> header;
  std::vector<Sample> samples;
};

// Line-delimited JSON: an optional header line, then one record per sample.
std::string sample_to_line(const Sample& s);
Sample sample_from_line(std::string_view line, std::size_t line_no = 0);

void write_dataset(const std::filesystem::path& path, const Dataset& data);
// Empty file is an empty dataset. Throws ParseError with the line number.
Dataset read_dataset(const std::filesystem::path& path);

}  // namespace fuzzysynth
