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

#include "fuzzysynth/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fuzzysynth/error.hpp"
#include "json_io.hpp"

namespace fuzzysynth {

using json_io::json;

std::string logits_to_json(const PolicyMatrix& pi) {
  json rows = json::array();
  for (int t = 0; t < pi.steps(); ++t) {
    json row = json::array();
    for (int s = 0; s < kNumFunctions; ++s) row.push_back(pi.logit(t, s));
    rows.push_back(std::move(row));
  }
  json j = {{"T", pi.steps()},
            {"n", kNumFunctions},
            {"functions", function_names()},
            {"logits", std::move(rows)}};
  return j.dump(1);
}

PolicyMatrix logits_from_json(std::string_view text, std::optional<int> expected_steps) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("logits file: ") + e.what());
  }
  try {
    const int steps = j.at("T").get<int>();
    const int n = j.at("n").get<int>();
    if (n != kNumFunctions) {
      throw ParseError("logits file: n = " + std::to_string(n) + ", expected " +
                       std::to_string(kNumFunctions));
    }
    if (expected_steps && steps != *expected_steps) {
      throw ParseError("logits file: T = " + std::to_string(steps) + ", sample needs " +
                       std::to_string(*expected_steps));
    }
    if (j.at("functions").get<std::vector<std::string>>() != function_names()) {
      throw ParseError("logits file: function order differs from the canonical order");
    }
    const auto& rows = j.at("logits");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(steps)) {
      throw ParseError("logits file: expected " + std::to_string(steps) + " logit rows");
    }
    std::vector<double> flat;
    for (const auto& row : rows) {
      const auto vals = row.get<std::vector<double>>();
      if (vals.size() != static_cast<std::size_t>(n)) {
        throw ParseError("logits file: row of " + std::to_string(vals.size()) + " entries");
      }
      flat.insert(flat.end(), vals.begin(), vals.end());
    }
    return PolicyMatrix(steps, std::move(flat));
  } catch (const json::exception& e) {
    throw ParseError(std::string("logits file: ") + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("logits file: ") + e.what());
  }
}

void write_logits(const std::filesystem::path& path, const PolicyMatrix& pi) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << logits_to_json(pi) << '\n';
}

PolicyMatrix read_logits(const std::filesystem::path& path, std::optional<int> expected_steps) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open logits file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return logits_from_json(buf.str(), expected_steps);
}

std::string result_to_line(const ResultRecord& r) {
  const SynthesisResult& res = r.result;
  json j = {{"index", r.index},
            {"program", json_io::program_to_json(res.program)},
            {"final_loss", std::isfinite(res.final_loss) ? json(res.final_loss) : json(nullptr)},
            {"consistent", res.consistent},
            {"restarts", res.restarts_used},
            {"wall_time", res.wall_time},
            {"seed", res.seed}};
  return j.dump();
}

ResultRecord result_from_line(std::string_view line, std::size_t line_no) {
  try {
    const json j = json::parse(line);
    ResultRecord r;
    r.index = j.at("index").get<std::size_t>();
    r.result.program = json_io::program_from_json(j.at("program"));
    const auto& loss = j.at("final_loss");
    r.result.final_loss = loss.is_null() ? INFINITY : loss.get<double>();
    r.result.consistent = j.at("consistent").get<bool>();
    r.result.restarts_used = j.at("restarts").get<int>();
    r.result.wall_time = j.at("wall_time").get<double>();
    r.result.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed result record: ") + e.what(), line_no);
  }
}

void write_results(const std::filesystem::path& path, const std::vector<ResultRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  for (const auto& r : records) out << result_to_line(r) << '\n';
}

std::vector<ResultRecord> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open results " + path.string());
  std::vector<ResultRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(result_from_line(line, line_no));
  }
  return out;
}

}  // namespace fuzzysynth
