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

#include <string>

#include "fuzzysynth/dsl.hpp"
#include "fuzzysynth/value.hpp"
#include "json.hpp"

namespace fuzzysynth::json_io {

using nlohmann::json;

json value_to_json(const Value& v);
Value value_from_json(const json& j);

json program_to_json(const Program& p);
// Throws ParseError naming an unknown function token.
Program program_from_json(const json& j);

json config_to_json(const Config& cfg);
Config config_from_json(const json& j);

}  // namespace fuzzysynth::json_io
