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
#include "harness/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace irsho {

namespace {
const std::set<std::string>& recipe_keys() {
  static const std::set<std::string> k = {"title", "quantity", "engine", "sweep_param", "sweep_values", "series",
                                          "drops", "seed", "gate_sigma", "gate_abs", "n_c", "mode"};
  return k;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// "label: k=v k=v | label: k=v"
std::vector<Series> parse_series(const std::string& s) {
  std::vector<Series> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '|')) {
    part = trim(part);
    if (part.empty()) continue;
    Series se;
    std::string body = part;
    const auto colon = part.find(':');
    if (colon != std::string::npos) {
      se.label = trim(part.substr(0, colon));
      body = part.substr(colon + 1);
    }
    std::stringstream bs(body);
    std::string tok;
    while (bs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) throw Error(Errc::Config, "series: expected key=value, got '" + tok + "'");
      se.overrides.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    if (se.label.empty()) se.label = trim(body);
    out.push_back(se);
  }
  return out;
}
}  // namespace

std::vector<double> parse_values(const std::string& s, const std::string& key) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::stringstream ss(s);
    std::string a, b, c;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, c, ':');
    const double lo = parse_double(trim(a), key), hi = parse_double(trim(b), key), st = parse_double(trim(c), key);
    if (!(st > 0) || hi < lo) throw Error(Errc::Config, key + ": bad range '" + s + "'");
    const long n = std::lround(std::floor((hi - lo) / st + 1e-9));
    // computed from the index so that values are exact multiples of the step
    for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * st);
  } else {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (!tok.empty()) out.push_back(parse_double(tok, key));
    }
  }
  if (out.empty()) throw Error(Errc::Config, key + ": empty value list");
  return out;
}

std::string recipe_dir() {
  if (const char* e = std::getenv("IRSHO_RECIPE_DIR")) return e;
#ifdef IRSHO_RECIPE_DIR
  return IRSHO_RECIPE_DIR;
#else
  return "recipes";
#endif
}

std::vector<std::string> recipe_ids(const std::string& dir) {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(dir, ec))
    if (e.path().extension() == ".recipe") ids.push_back(e.path().stem().string());
  if (ec) throw Error(Errc::Io, "cannot list recipe directory '" + dir + "'");
  std::sort(ids.begin(), ids.end());
  return ids;
}

Recipe parse_recipe(const KeyValues& kv, const std::string& id) {
  Recipe r;
  r.id = id;
  SweepSpec& sp = r.spec;
  sp.base = params_from_kv(kv, ScenarioParams{}, recipe_keys());
  if (auto v = kv.find("title")) r.title = *v;
  auto need = [&](const char* k) -> const std::string& {
    const std::string* v = kv.find(k);
    if (!v) throw Error(Errc::Config, "recipe " + id + ": missing '" + k + "'");
    return *v;
  };
  sp.quantity = parse_quantity(need("quantity"));
  sp.param = need("sweep_param");
  sp.values = parse_values(need("sweep_values"), "sweep_values");
  if (auto v = kv.find("engine")) sp.engine = parse_engine(*v);
  if (auto v = kv.find("series")) sp.series = parse_series(*v);
  if (auto v = kv.find("drops")) sp.drops = static_cast<std::uint64_t>(parse_double(*v, "drops"));
  if (auto v = kv.find("seed")) sp.seed = static_cast<std::uint64_t>(parse_double(*v, "seed"));
  if (auto v = kv.find("gate_sigma")) sp.gate_sigma = parse_double(*v, "gate_sigma");
  if (auto v = kv.find("gate_abs")) sp.gate_abs = parse_double(*v, "gate_abs");
  if (auto v = kv.find("n_c")) sp.n_c = parse_double(*v, "n_c");
  if (auto v = kv.find("mode")) {
    if (*v == "exact") sp.mode = Mode::Exact;
    else if (*v == "approx") sp.mode = Mode::Approx;
    else throw Error(Errc::Config, "recipe " + id + ": mode must be exact or approx");
  }
  // validate overrides and swept key early
  for (const auto& s : sp.series) (void)point_params(sp, &s, sp.values.front());
  if (sp.series.empty()) (void)point_params(sp, nullptr, sp.values.front());
  return r;
}

Recipe load_recipe(const std::string& id, const std::string& dir) {
  const std::string path = (std::filesystem::path(dir) / (id + ".recipe")).string();
  if (!std::filesystem::exists(path)) throw Error(Errc::Config, "unknown recipe '" + id + "'");
  return parse_recipe(load_kv(path), id);
}

}  // namespace irsho
