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

#include "fuzzysynth/dataset.hpp"

#include <fstream>

#include "json_io.hpp"

namespace fuzzysynth {

using json_io::json;

namespace {

// Inputs a single program may reject before it is replaced.
constexpr int kAttemptsPerProgram = 200;

}  // namespace

void DatasetSpec::validate() const {
  if (num_samples < 0) throw ValidationError("dataset: num_samples must be non-negative");
  if (program_length < 1) throw ValidationError("dataset: program_length must be at least 1");
  if (examples_observed < 1) throw ValidationError("dataset: need at least one observed example");
  if (examples_assessment < 0) throw ValidationError("dataset: examples_assessment is negative");
  if (!(noise_prob >= 0.0 && noise_prob <= 1.0)) {
    throw ValidationError("dataset: noise probability must lie in [0, 1]");
  }
}

Program gen_program(int length, std::mt19937_64& rng) {
  if (length < 1) throw ValidationError("gen_program: length must be at least 1");
  std::uniform_int_distribution<int> any(0, kNumFunctions - 1);
  std::uniform_int_distribution<int> arithmetic(2, kNumFunctions - 1);
  Program p;
  p.reserve(length);
  for (int t = 0; t + 1 < length; ++t) p.push_back(function_at(arithmetic(rng)));
  p.push_back(function_at(any(rng)));
  return p;
}

Value gen_input(const Config& cfg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, cfg.max_length);
  std::uniform_int_distribution<int> elem(cfg.min_value, cfg.max_value);
  Value::List xs(len(rng));
  for (int& x : xs) x = elem(rng);
  return Value::list(std::move(xs));
}

std::optional<std::vector<Example>> gen_examples(const Program& p, int count, const Config& cfg,
                                                 std::mt19937_64& rng, int attempts) {
  std::vector<Example> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    if (attempts-- <= 0) return std::nullopt;
    Value in = gen_input(cfg, rng);
    Value res = execute(p, in, cfg);
    if (res.is_null()) continue;
    out.push_back({std::move(in), std::move(res)});
  }
  return out;
}

Value inject_noise(const Value& v, double p, const Config& cfg, std::mt19937_64& rng) {
  if (v.is_null()) throw ValidationError("inject_noise: outputs are never null");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("inject_noise: p must lie in [0, 1]");
  std::bernoulli_distribution flip(p);
  std::uniform_int_distribution<int> elem(cfg.min_value, cfg.max_value);
  if (v.is_int()) return flip(rng) ? Value::integer(elem(rng)) : v;
  Value::List xs = v.as_list();
  for (int& x : xs) {
    if (flip(rng)) x = elem(rng);
  }
  return Value::list(std::move(xs));
}

Sample gen_sample(const DatasetSpec& spec, const Config& cfg, std::mt19937_64& rng) {
  spec.validate();
  const int total = spec.examples_observed + spec.examples_assessment;
  int budget = kGenerationAttempts;
  Program program;
  while (budget > 0) {
    program = gen_program(spec.program_length, rng);
    const int allowance = std::min(budget, kAttemptsPerProgram);
    // gen_examples consumes from a copy; charge the draws actually spent.
    int spent = 0;
    std::vector<Example> examples;
    bool complete = true;
    while (static_cast<int>(examples.size()) < total) {
      if (spent >= allowance) {
        complete = false;
        break;
      }
      ++spent;
      Value in = gen_input(cfg, rng);
      Value res = execute(program, in, cfg);
      if (res.is_null()) continue;
      examples.push_back({std::move(in), std::move(res)});
    }
    budget -= spent;
    if (!complete) continue;

    Sample s;
    s.program = program;
    s.length = spec.program_length;
    s.noise = spec.noise_prob;
    s.observed.assign(examples.begin(), examples.begin() + spec.examples_observed);
    s.assessment.assign(examples.begin() + spec.examples_observed, examples.end());
    if (spec.noise_prob > 0.0) {
      for (Example& ex : s.observed) ex.output = inject_noise(ex.output, spec.noise_prob, cfg, rng);
      if (spec.noise_all_outputs) {
        for (Example& ex : s.assessment) {
          ex.output = inject_noise(ex.output, spec.noise_prob, cfg, rng);
        }
      }
    }
    return s;
  }
  throw GenerationError("gen_sample: no valid examples after " +
                        std::to_string(kGenerationAttempts) + " draws; last program: " +
                        program_to_string(program));
}

std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Sample> gen_dataset(const DatasetSpec& spec, const Config& cfg) {
  spec.validate();
  std::vector<Sample> out;
  out.reserve(spec.num_samples);
  for (int n = 0; n < spec.num_samples; ++n) {
    auto rng = derived_rng(spec.seed, static_cast<std::uint64_t>(n));
    out.push_back(gen_sample(spec, cfg, rng));
  }
  return out;
}

namespace {

json examples_to_json(const std::vector<Example>& xs) {
  json out = json::array();
  for (const Example& ex : xs) {
    out.push_back({{"input", json_io::value_to_json(ex.input)},
                   {"output", json_io::value_to_json(ex.output)}});
  }
  return out;
}

std::vector<Example> examples_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("examples: expected a list");
  std::vector<Example> out;
  for (const auto& ex : j) {
    out.push_back({json_io::value_from_json(ex.at("input")),
                   json_io::value_from_json(ex.at("output"))});
  }
  return out;
}

json header_to_json(const DatasetHeader& h) {
  return {{"header",
           {{"config", json_io::config_to_json(h.config)},
            {"program_length", h.program_length},
            {"noise", h.noise},
            {"seed", h.seed},
            {"examples_observed", h.examples_observed},
            {"examples_assessment", h.examples_assessment},
            {"num_samples", h.num_samples}}}};
}

DatasetHeader header_from_json(const json& j) {
  DatasetHeader h;
  h.config = json_io::config_from_json(j.at("config"));
  h.program_length = j.at("program_length").get<int>();
  h.noise = j.at("noise").get<double>();
  h.seed = j.at("seed").get<std::uint64_t>();
  h.examples_observed = j.at("examples_observed").get<int>();
  h.examples_assessment = j.at("examples_assessment").get<int>();
  h.num_samples = j.at("num_samples").get<std::size_t>();
  return h;
}

}  // namespace

std::string sample_to_line(const Sample& s) {
  json j = {{"program", json_io::program_to_json(s.program)},
            {"length", s.length},
            {"noise", s.noise},
            {"observed", examples_to_json(s.observed)},
            {"assessment", examples_to_json(s.assessment)}};
  return j.dump();
}

Sample sample_from_line(std::string_view line, std::size_t line_no) {
  try {
    const json j = json::parse(line);
    Sample s;
    s.program = json_io::program_from_json(j.at("program"));
    s.length = j.at("length").get<int>();
    s.noise = j.value("noise", 0.0);
    s.observed = examples_from_json(j.at("observed"));
    if (j.contains("assessment")) s.assessment = examples_from_json(j.at("assessment"));
    return s;
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed sample record: ") + e.what(), line_no);
  }
}

void write_dataset(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  if (data.header) out << header_to_json(*data.header).dump() << '\n';
  for (const Sample& s : data.samples) out << sample_to_line(s) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset " + path.string());
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line_no == 1 && line.find("\"header\"") != std::string::npos) {
      try {
        data.header = header_from_json(json::parse(line).at("header"));
      } catch (const json::exception& e) {
        throw ParseError(std::string("malformed dataset header: ") + e.what(), line_no);
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), line_no);
      }
      continue;
    }
    data.samples.push_back(sample_from_line(line, line_no));
  }
  return data;
}

}  // namespace fuzzysynth
