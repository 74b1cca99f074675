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
#include <iosfwd>
#include <string>
#include <vector>

#include "fuzzysynth/config.hpp"

namespace fuzzysynth::cli {

struct GenDataOptions {
  int num = 0;
  int length = 1;
  int observed = 5;
  int assessment = 0;
  double noise = 0.0;
  bool noise_all_outputs = false;
  std::uint64_t seed = 0;
  Config config;
  std::filesystem::path out;
};

struct SynthesizeOptions {
  std::filesystem::path data;
  double timeout = 5.0;
  double lr = 0.2;
  double momentum = 0.0;
  std::string optimizer = "gd";  // gd or adam
  double adam_beta2 = 0.999;
  // "random", a logits file applied to every sample, or a directory holding
  // <index>.json per sample.
  std::string init = "random";
  int restart_iters = 200;
  int max_restarts = 0;
  bool structural_prior = false;
  bool argmax_check = true;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::filesystem::path out;
};

struct EvaluateOptions {
  std::filesystem::path data;
  std::filesystem::path results;
  std::string metric = "synthesis";
  std::filesystem::path out;  // optional report file
};

struct BaselineOptions {
  std::filesystem::path data;
  double timeout = 5.0;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::filesystem::path out;
};

void gen_data(const GenDataOptions& opts);
void synthesize(const SynthesizeOptions& opts);
// Returns the report as one JSON document.
std::string evaluate(const EvaluateOptions& opts);
void baseline(const BaselineOptions& opts);

// Seed used for sample `index` of a run seeded with `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);

// Sidecar manifest path for an output file: "<out>.manifest.json".
std::filesystem::path manifest_path(const std::filesystem::path& out);

// Full command-line entry point. Returns the process exit code; errors go to
// `err` as a single JSON line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzysynth::cli
