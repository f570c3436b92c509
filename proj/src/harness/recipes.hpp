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

#include <string>
#include <vector>

#include "core/config.hpp"
#include "harness/sweep.hpp"

namespace irsho {

struct Recipe {
  std::string id;
  std::string title;
  SweepSpec spec;
};

// Directory holding `<id>.recipe` files; IRSHO_RECIPE_DIR in the environment wins.
std::string recipe_dir();
std::vector<std::string> recipe_ids(const std::string& dir = recipe_dir());
Recipe load_recipe(const std::string& id, const std::string& dir = recipe_dir());
Recipe parse_recipe(const KeyValues& kv, const std::string& id);

// "a:b:step" (inclusive) or a comma separated list.
std::vector<double> parse_values(const std::string& s, const std::string& key);

}  // namespace irsho
