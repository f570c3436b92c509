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
#include "core/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace irsho {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void config_error(const std::string& msg) { throw Error(Errc::Config, msg); }

}  // namespace

const std::string* KeyValues::find(const std::string& key) const {
  const std::string* hit = nullptr;
  for (const auto& [k, v] : entries)
    if (k == key) hit = &v;
  return hit;
}

KeyValues parse_kv(const std::string& text, const std::string& origin) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments outside quotes
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      config_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) config_error(origin + ":" + std::to_string(lineno) + ": empty key");
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    kv.entries.emplace_back(key, val);
  }
  return kv;
}

KeyValues load_kv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::Config, "cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_kv(ss.str(), path);
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    size_t pos = 0;
    double x = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    config_error("key '" + key + "': not a number: '" + s + "'");
  }
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  config_error("key '" + key + "': expected true/false, got '" + s + "'");
}

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {
      "lambda_b_per_km2", "lambda_o_per_km2", "mu", "lambda_i_per_km2",
      "length_dist", "l_m", "l_min_m", "l_max_m",
      "p_t_dbm", "k_los", "k_nlos", "k_los_db", "k_nlos_db",
      "alpha_los", "alpha_nlos", "m_los", "m_nlos",
      "n_elements", "d_serve_m", "v_m", "pathloss_ref_distance_m",
      "irs_mode", "ho_include_rlos_candidates", "ho_frozen_candidate_states"};
  return keys;
}

bool is_scenario_key(const std::string& key) {
  for (const auto& k : scenario_keys())
    if (k == key) return true;
  return false;
}

void apply_param(ScenarioParams& p, const std::string& key, const std::string& value) {
  auto num = [&] { return parse_double(value, key); };
  if (key == "lambda_b_per_km2") p.lambda_b = per_km2_to_per_m2(num());
  else if (key == "lambda_o_per_km2") p.lambda_o = per_km2_to_per_m2(num());
  else if (key == "mu") p.mu = num();
  else if (key == "lambda_i_per_km2") {
    // expressed through mu so that lambda_i = mu * lambda_o holds
    double li = per_km2_to_per_m2(num());
    if (!(p.lambda_o > 0)) config_error("lambda_i_per_km2 requires lambda_o_per_km2 > 0 set before it");
    p.mu = li / p.lambda_o;
  } else if (key == "length_dist") {
    if (value == "constant") p.length.kind = LengthDist::Kind::Constant;
    else if (value == "uniform") p.length.kind = LengthDist::Kind::Uniform;
    else config_error("length_dist must be constant or uniform");
  } else if (key == "l_m") {
    p.length.kind = LengthDist::Kind::Constant;
    p.length.l_min = p.length.l_max = num();
  } else if (key == "l_min_m") p.length.l_min = num();
  else if (key == "l_max_m") p.length.l_max = num();
  else if (key == "p_t_dbm") p.p_t = dbm_to_watt(num());
  else if (key == "k_los") p.k_los = num();
  else if (key == "k_nlos") p.k_nlos = num();
  else if (key == "k_los_db") p.k_los = std::pow(10.0, num() / 10.0);
  else if (key == "k_nlos_db") p.k_nlos = std::pow(10.0, num() / 10.0);
  else if (key == "alpha_los") p.alpha_los = num();
  else if (key == "alpha_nlos") p.alpha_nlos = num();
  else if (key == "m_los") p.m_los = num();
  else if (key == "m_nlos") p.m_nlos = num();
  else if (key == "n_elements") {
    double n = num();
    if (n != std::floor(n) || n < 1 || n > 1e9) config_error("n_elements must be a positive integer");
    p.n_elements = static_cast<int>(n);
  } else if (key == "d_serve_m") p.d_serve = num();
  else if (key == "v_m") p.v = num();
  else if (key == "pathloss_ref_distance_m") p.pathloss_ref_m = num();
  else if (key == "irs_mode") {
    if (value == "analysis_consistent") p.irs_mode = IrsMode::AnalysisConsistent;
    else if (value == "exact_geometry") p.irs_mode = IrsMode::ExactGeometry;
    else config_error("irs_mode must be analysis_consistent or exact_geometry");
  } else if (key == "ho_include_rlos_candidates") p.ho_include_rlos_candidates = parse_bool(value, key);
  else if (key == "ho_frozen_candidate_states") p.ho_frozen_candidate_states = parse_bool(value, key);
  else config_error("unknown key '" + key + "'");
}

double get_param(const ScenarioParams& p, const std::string& key) {
  if (key == "lambda_b_per_km2") return per_m2_to_per_km2(p.lambda_b);
  if (key == "lambda_o_per_km2") return per_m2_to_per_km2(p.lambda_o);
  if (key == "mu") return p.mu;
  if (key == "lambda_i_per_km2") return per_m2_to_per_km2(p.mu * p.lambda_o);
  if (key == "l_m" || key == "l_max_m") return p.length.l_max;
  if (key == "l_min_m") return p.length.l_min;
  if (key == "p_t_dbm") return watt_to_dbm(p.p_t);
  if (key == "k_los") return p.k_los;
  if (key == "k_nlos") return p.k_nlos;
  if (key == "k_los_db") return 10.0 * std::log10(p.k_los);
  if (key == "k_nlos_db") return 10.0 * std::log10(p.k_nlos);
  if (key == "alpha_los") return p.alpha_los;
  if (key == "alpha_nlos") return p.alpha_nlos;
  if (key == "m_los") return p.m_los;
  if (key == "m_nlos") return p.m_nlos;
  if (key == "n_elements") return p.n_elements;
  if (key == "d_serve_m") return p.d_serve;
  if (key == "v_m") return p.v;
  if (key == "pathloss_ref_distance_m") return p.pathloss_ref_m;
  config_error("key '" + key + "' has no numeric value");
}

ScenarioParams params_from_kv(const KeyValues& kv, const ScenarioParams& base,
                              const std::set<std::string>& extra) {
  ScenarioParams p = base;
  // lambda_i depends on lambda_o, so it is applied last
  const std::string* li = nullptr;
  for (const auto& [k, v] : kv.entries) {
    if (extra.count(k)) continue;
    if (!is_scenario_key(k)) config_error("unknown key '" + k + "'");
    if (k == "lambda_i_per_km2") {
      li = &v;
      continue;
    }
    apply_param(p, k, v);
  }
  if (li) apply_param(p, "lambda_i_per_km2", *li);
  return p;
}

std::string params_to_kv(const ScenarioParams& p) {
  std::ostringstream os;
  os << "lambda_b_per_km2 = " << fmt(per_m2_to_per_km2(p.lambda_b)) << "\n";
  os << "lambda_o_per_km2 = " << fmt(per_m2_to_per_km2(p.lambda_o)) << "\n";
  os << "mu = " << fmt(p.mu) << "\n";
  if (p.length.kind == LengthDist::Kind::Constant) {
    os << "length_dist = constant\n";
    os << "l_m = " << fmt(p.length.l_max) << "\n";
  } else {
    os << "length_dist = uniform\n";
    os << "l_min_m = " << fmt(p.length.l_min) << "\n";
    os << "l_max_m = " << fmt(p.length.l_max) << "\n";
  }
  os << "p_t_dbm = " << fmt(watt_to_dbm(p.p_t)) << "\n";
  os << "k_los = " << fmt(p.k_los) << "\n";
  os << "k_nlos = " << fmt(p.k_nlos) << "\n";
  os << "alpha_los = " << fmt(p.alpha_los) << "\n";
  os << "alpha_nlos = " << fmt(p.alpha_nlos) << "\n";
  os << "m_los = " << fmt(p.m_los) << "\n";
  os << "m_nlos = " << fmt(p.m_nlos) << "\n";
  os << "n_elements = " << p.n_elements << "\n";
  os << "d_serve_m = " << fmt(p.d_serve) << "\n";
  os << "v_m = " << fmt(p.v) << "\n";
  os << "pathloss_ref_distance_m = " << fmt(p.pathloss_ref_m) << "\n";
  os << "irs_mode = " << (p.irs_mode == IrsMode::AnalysisConsistent ? "analysis_consistent" : "exact_geometry")
     << "\n";
  os << "ho_include_rlos_candidates = " << (p.ho_include_rlos_candidates ? "true" : "false") << "\n";
  os << "ho_frozen_candidate_states = " << (p.ho_frozen_candidate_states ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace irsho
