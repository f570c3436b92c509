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
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "irsho/irsho.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCompareFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> drops;
  std::string engine;
  std::string mode = "approx";
  std::string out;
};

struct SweepOpts {
  std::string sweep;   // PARAM=VALUES
  std::string series;
  std::string format = "csv";
  std::optional<double> gate_sigma, gate_abs;
};

// Owns a C string returned by the library.
struct CStr {
  char* p = nullptr;
  ~CStr() { irsho_free(p); }
  std::string str() const { return p ? p : ""; }
};

int exit_for(int status) {
  if (status == IRSHO_OK) return kExitPass;
  if (irsho_status_is_numeric(status) || status == IRSHO_E_INTERNAL) return kExitNumeric;
  return kExitConfig;
}

int report(int status) {
  std::cerr << "irsho: " << irsho_status_name(status) << ": " << irsho_last_error() << "\n";
  return exit_for(status);
}

void add_common(CLI::App* c, CommonOpts& o, bool engine) {
  c->add_option("--config", o.config, "scenario file (key = value)");
  c->add_option("--seed", o.seed, "random seed");
  c->add_option("--drops", o.drops, "Monte-Carlo drops");
  if (engine) c->add_option("--engine", o.engine, "analytic | mc | both")->check(CLI::IsMember({"analytic", "mc", "both"}));
  c->add_option("--mode", o.mode, "density mode: exact | approx")->check(CLI::IsMember({"exact", "approx"}));
  c->add_option("--out", o.out, "output path (default stdout)");
}

void add_sweep(CLI::App* c, SweepOpts& s) {
  c->add_option("--sweep", s.sweep, "PARAM=VALUES, VALUES as a:b:step or a,b,c");
  c->add_option("--series", s.series, "curves: 'label: key=value ... | ...'");
  c->add_option("--format", s.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  c->add_option("--gate-sigma", s.gate_sigma, "pass if |diff| <= max(gate_sigma * sigma, gate_abs)");
  c->add_option("--gate-abs", s.gate_abs, "absolute comparison gate");
}

struct Scn {
  irsho_scenario* s = nullptr;
  ~Scn() { irsho_scenario_destroy(s); }
};

int load_scenario(const std::string& path, Scn& out) {
  if (path.empty()) return irsho_scenario_create(&out.s);
  return irsho_scenario_from_file(path.c_str(), &out.s);
}

int write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return kExitPass;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    std::cerr << "irsho: cannot write '" << path << "'\n";
    return kExitConfig;
  }
  return kExitPass;
}

struct Sweep {
  irsho_sweep* p = nullptr;
  ~Sweep() { irsho_sweep_destroy(p); }
};
struct Result {
  irsho_sweep_result* p = nullptr;
  ~Result() { irsho_result_destroy(p); }
};

// Applies CLI overrides, runs, writes output, and derives the exit code.
int run_and_emit(irsho_sweep* sw, const CommonOpts& o, const SweepOpts& so, bool compare) {
  int st = IRSHO_OK;
  auto set = [&](const char* k, const std::string& v) {
    if (st == IRSHO_OK) st = irsho_sweep_set(sw, k, v.c_str());
  };
  if (!so.sweep.empty()) {
    const auto eq = so.sweep.find('=');
    if (eq == std::string::npos) {
      std::cerr << "irsho: --sweep expects PARAM=VALUES\n";
      return kExitConfig;
    }
    set("param", so.sweep.substr(0, eq));
    set("values", so.sweep.substr(eq + 1));
  }
  if (!so.series.empty()) set("series", so.series);
  if (!o.engine.empty()) set("engine", o.engine);
  if (compare) set("engine", "both");
  set("mode", o.mode);
  if (o.seed) set("seed", std::to_string(*o.seed));
  if (o.drops) set("drops", std::to_string(*o.drops));
  char buf[64];
  if (so.gate_sigma) {
    std::snprintf(buf, sizeof buf, "%.17g", *so.gate_sigma);
    set("gate_sigma", buf);
  }
  if (so.gate_abs) {
    std::snprintf(buf, sizeof buf, "%.17g", *so.gate_abs);
    set("gate_abs", buf);
  }
  if (st != IRSHO_OK) return report(st);

  Result r;
  if ((st = irsho_sweep_run(sw, &r.p)) != IRSHO_OK) return report(st);
  CStr text;
  st = so.format == "json" ? irsho_result_json(r.p, &text.p) : irsho_result_csv(r.p, &text.p);
  if (st != IRSHO_OK) return report(st);
  if (int e = write_out(o.out, text.str())) return e;

  irsho_summary sum{};
  CStr rep;
  if ((st = irsho_result_summary(r.p, &sum, &rep.p)) != IRSHO_OK) return report(st);
  if (sum.compared > 0 || sum.errors > 0) std::cerr << rep.str();
  if (sum.errors > 0) return kExitNumeric;
  return sum.failures > 0 ? kExitCompareFail : kExitPass;
}

int cmd_quantity(const std::string& quantity, const CommonOpts& o, const SweepOpts& so, bool compare) {
  Scn s;
  if (int st = load_scenario(o.config, s)) return report(st);
  Sweep sw;
  if (int st = irsho_sweep_create(s.s, quantity.c_str(), &sw.p)) return report(st);
  return run_and_emit(sw.p, o, so, compare);
}

int cmd_validate(const CommonOpts& o) {
  Scn s;
  if (int st = load_scenario(o.config, s)) return report(st);
  CStr rep;
  const int st = irsho_scenario_validate(s.s, &rep.p);
  if (st != IRSHO_OK) {
    std::cerr << rep.str();
    return report(st);
  }
  CStr norm;
  if (int e = irsho_scenario_to_string(s.s, &norm.p)) return report(e);
  return write_out(o.out, norm.str());
}

int cmd_simulate(const CommonOpts& o, const std::string& protocol, double d_m, const std::string& dump) {
  Scn s;
  if (int st = load_scenario(o.config, s)) return report(st);
  irsho_mc_options mo;
  irsho_mc_options_default(&mo);
  if (protocol == "density") mo.protocol = IRSHO_PROTO_DENSITY;
  else if (protocol == "association") mo.protocol = IRSHO_PROTO_ASSOCIATION;
  else if (protocol == "transition") mo.protocol = IRSHO_PROTO_TRANSITION;
  else mo.protocol = IRSHO_PROTO_HANDOVER;
  if (o.seed) mo.seed = *o.seed;
  if (o.drops) mo.n_drops = *o.drops;
  mo.d_fixed_m = d_m;
  if (!dump.empty()) {
    if (int st = irsho_world_dump(s.s, mo.seed, 0, 0.0, dump.c_str())) return report(st);
  }
  irsho_mc_result r{};
  if (int st = irsho_mc_run(s.s, &mo, &r)) return report(st);

  const char* names[3] = {"L", "N", "R"};
  auto est = [](std::uint64_t hits, std::uint64_t n) {
    nlohmann::json e;
    e["n"] = n;
    if (n == 0) {
      e["mean"] = nullptr;
      e["ci95_halfwidth"] = nullptr;
      return e;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    e["mean"] = p;
    e["ci95_halfwidth"] = 1.96 * std::sqrt(p * (1 - p) / static_cast<double>(n));
    return e;
  };
  nlohmann::json j;
  j["protocol"] = protocol;
  j["seed"] = mo.seed;
  j["n_drops"] = r.n_drops;
  j["n_valid"] = r.n_valid;
  j["discarded"] = {{"stuck_user", r.n_stuck}, {"empty_world", r.n_empty}};
  for (int k = 0; k < 3; ++k) {
    j["state"][names[k]] = est(r.k_count[k], r.n_valid);
    if (mo.protocol >= IRSHO_PROTO_TRANSITION)
      for (int q = 0; q < 3; ++q)
        j["transition"][std::string(names[k]) + names[q]] = est(r.kj_count[3 * k + q], r.k_count[k]);
    if (mo.protocol == IRSHO_PROTO_HANDOVER) j["handover_given"][names[k]] = est(r.ho_by_k[k], r.k_count[k]);
  }
  if (mo.protocol == IRSHO_PROTO_DENSITY) j["d_m"] = d_m;
  if (mo.protocol == IRSHO_PROTO_HANDOVER) j["handover"] = est(r.ho_count, r.n_valid);
  return write_out(o.out, j.dump(2) + "\n");
}

int cmd_recipe(const std::string& id, const CommonOpts& o, const SweepOpts& so, bool describe) {
  if (id == "list") {
    CStr j;
    if (int st = irsho_recipe_list(&j.p)) return report(st);
    auto arr = nlohmann::json::parse(j.str());
    for (const auto& r : arr)
      std::cout << r["id"].get<std::string>() << "\t" << r["quantity"].get<std::string>() << "\t"
                << r["title"].get<std::string>() << "\n";
    return kExitPass;
  }
  Sweep sw;
  if (int st = irsho_recipe_load(id.c_str(), &sw.p)) return report(st);
  if (describe) {
    CStr j;
    if (int st = irsho_sweep_describe(sw.p, &j.p)) return report(st);
    return write_out(o.out, j.str() + "\n");
  }
  return run_and_emit(sw.p, o, so, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-aided cellular handover: analytic model and Monte-Carlo validator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", irsho_version());

  CommonOpts o;
  SweepOpts so;
  int code = kExitPass;

  auto* validate = app.add_subcommand("validate", "check a scenario file and print it normalized");
  add_common(validate, o, false);
  validate->callback([&] { code = cmd_validate(o); });

  for (const char* q : {"densities", "association", "transition", "handover"}) {
    const std::string quantity = std::string(q) == "densities" ? "density" : q;
    auto* c = app.add_subcommand(q, std::string("evaluate ") + quantity + " (optionally swept)");
    add_common(c, o, true);
    add_sweep(c, so);
    c->callback([&, quantity] { code = cmd_quantity(quantity, o, so, false); });
  }

  std::string protocol = "handover", dump;
  double d_m = 100.0;
  auto* sim = app.add_subcommand("simulate", "run the Monte-Carlo engine only");
  add_common(sim, o, false);
  sim->add_option("--protocol", protocol, "density | association | transition | handover")
      ->check(CLI::IsMember({"density", "association", "transition", "handover"}));
  sim->add_option("--d", d_m, "BS distance for the density protocol (m)");
  sim->add_option("--dump-world", dump, "write the first drop's world to this path");
  sim->callback([&] { code = cmd_simulate(o, protocol, d_m, dump); });

  std::string cmp_quantity;
  auto* cmp = app.add_subcommand("compare", "analytic vs Monte-Carlo; exit 1 on any failed row");
  cmp->add_option("quantity", cmp_quantity, "density | association | transition | handover")
      ->required()
      ->check(CLI::IsMember({"density", "association", "transition", "handover"}));
  add_common(cmp, o, false);
  add_sweep(cmp, so);
  cmp->callback([&] { code = cmd_quantity(cmp_quantity, o, so, true); });

  std::string fig;
  bool describe = false;
  auto* rec = app.add_subcommand("recipe", "run a figure recipe; 'recipe list' enumerates them");
  rec->add_option("fig-id", fig, "recipe id or 'list'")->required();
  add_common(rec, o, true);
  add_sweep(rec, so);
  rec->add_flag("--describe", describe, "print the recipe instead of running it");
  rec->callback([&] { code = cmd_recipe(fig, o, so, describe); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? kExitPass : kExitConfig;
  }
  return code;
}
