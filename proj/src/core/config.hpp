/*
Copyright 2026 The irsho Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core/scenario.hpp"

namespace irsho {

// Flat `key = value` document; '#' starts a comment, strings may be quoted.
struct KeyValues {
  std::vector<std::pair<std::string, std::string>> entries;
  const std::string* find(const std::string& key) const;
};

KeyValues parse_kv(const std::string& text, const std::string& origin = "<config>");
KeyValues load_kv(const std::string& path);

// Documented scenario keys (in config units: per km^2, dBm, meters).
const std::vector<std::string>& scenario_keys();
bool is_scenario_key(const std::string& key);

// Applies one scenario key; throws Error(Config) on unknown key or bad value.
void apply_param(ScenarioParams& p, const std::string& key, const std::string& value);
// Reads one scenario key back in config units.
double get_param(const ScenarioParams& p, const std::string& key);

// Builds parameters from key/values. Keys in `extra` are skipped; anything
// else that is not a scenario key is a hard error.
ScenarioParams params_from_kv(const KeyValues& kv, const ScenarioParams& base = {},
                              const std::set<std::string>& extra = {});
std::string params_to_kv(const ScenarioParams& p);

double parse_double(const std::string& s, const std::string& key);
bool parse_bool(const std::string& s, const std::string& key);

}  // namespace irsho
