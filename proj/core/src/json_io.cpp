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

#include "json_io.hpp"

#include "fuzzysynth/error.hpp"

namespace fuzzysynth::json_io {

json value_to_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kNull:
      return {{"type", "null"}};
    case Value::Kind::kInt:
      return {{"type", "int"}, {"value", v.as_int()}};
    case Value::Kind::kList:
      return {{"type", "list"}, {"value", v.as_list()}};
  }
  return {};
}

Value value_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw ParseError("value: missing type tag");
  const std::string type = j.at("type").get<std::string>();
  if (type == "null") return Value::null();
  if (type == "int") return Value::integer(j.at("value").get<int>());
  if (type == "list") return Value::list(j.at("value").get<std::vector<int>>());
  throw ParseError("value: unknown type tag '" + type + "'");
}

json program_to_json(const Program& p) {
  json out = json::array();
  for (FunctionId f : p) out.push_back(std::string(function_name(f)));
  return out;
}

Program program_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("program: expected a list of function names");
  Program p;
  for (const auto& tok : j) {
    const std::string name = tok.get<std::string>();
    auto f = parse_function(name);
    if (!f) throw ParseError("program: unknown function '" + name + "'");
    p.push_back(*f);
  }
  return p;
}

json config_to_json(const Config& cfg) {
  return {{"min_value", cfg.min_value},
          {"max_value", cfg.max_value},
          {"max_length", cfg.max_length}};
}

Config config_from_json(const json& j) {
  Config cfg;
  cfg.min_value = j.at("min_value").get<int>();
  cfg.max_value = j.at("max_value").get<int>();
  cfg.max_length = j.at("max_length").get<int>();
  cfg.validate();
  return cfg;
}

}  // namespace fuzzysynth::json_io
