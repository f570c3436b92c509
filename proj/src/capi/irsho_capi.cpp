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
#include "irsho/irsho.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/handover.hpp"
#include "harness/recipes.hpp"
#include "harness/sweep.hpp"
#include "mc/sim.hpp"

struct irsho_scenario {
  irsho::ScenarioParams p;
};

struct irsho_sweep {
  irsho::SweepSpec spec;
  std::string id, title;
};

struct irsho_sweep_result {
  irsho::SweepResult r;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
int guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return IRSHO_OK;
  } catch (const irsho::Error& e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(IRSHO_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(IRSHO_E_INTERNAL, e.what());
  } catch (...) {
    return fail(IRSHO_E_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw irsho::Error(irsho::Errc::InvalidArgument, std::string(what) + " is null");
}

irsho::mc::Protocol to_protocol(int p) {
  switch (p) {
    case IRSHO_PROTO_DENSITY: return irsho::mc::Protocol::Density;
    case IRSHO_PROTO_ASSOCIATION: return irsho::mc::Protocol::Association;
    case IRSHO_PROTO_TRANSITION: return irsho::mc::Protocol::Transition;
    case IRSHO_PROTO_HANDOVER: return irsho::mc::Protocol::Handover;
  }
  throw irsho::Error(irsho::Errc::InvalidArgument, "unknown protocol " + std::to_string(p));
}

nlohmann::json row_json(const irsho::ComparisonRow& r) {
  nlohmann::json j;
  j["series"] = r.series;
  j["value"] = r.value;
  j["metric"] = r.metric;
  j["unit"] = r.unit;
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
    else j[k] = nullptr;
  };
  put("analytic", r.analytic);
  put("mc_mean", r.mc_mean);
  put("mc_ci95_halfwidth", r.mc_ci);
  put("abs_diff", r.abs_diff);
  j["pass"] = r.pass;
  j["status"] = r.status;
  return j;
}

}  // namespace

extern "C" {

const char* irsho_version(void) { return "0.1.0"; }

const char* irsho_status_name(int status) {
  if (status == IRSHO_OK) return "Ok";
  if (status == IRSHO_E_INTERNAL) return "Internal";
  if (status >= IRSHO_E_INVALID_ARGUMENT && status <= IRSHO_E_IO)
    return irsho::errc_name(static_cast<irsho::Errc>(status));
  return "Unknown";
}

const char* irsho_last_error(void) { return g_last_error.c_str(); }

int irsho_status_is_numeric(int status) {
  switch (status) {
    case IRSHO_E_NON_CONVERGENCE:
    case IRSHO_E_NON_FINITE_INTEGRAND:
    case IRSHO_E_TAIL_NOT_DECAYING:
    case IRSHO_E_UNNORMALIZED_DENSITY:
    case IRSHO_E_DEGENERATE_STATE:
    case IRSHO_E_DEGENERATE_CONDITION:
    case IRSHO_E_ZERO_DISTANCE:
    case IRSHO_E_MISSING_IRS_DISTANCE:
    case IRSHO_E_EMPTY_WORLD:
    case IRSHO_E_STUCK_USER:
    case IRSHO_E_TOO_FEW_VALID_DROPS: return 1;
    default: return 0;
  }
}

void irsho_free(void* p) { std::free(p); }

int irsho_scenario_create(irsho_scenario** out) {
  return guarded([&] {
    need(out, "out");
    *out = new irsho_scenario{};
  });
}

int irsho_scenario_from_file(const char* path, irsho_scenario** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto* s = new irsho_scenario{};
    try {
      s->p = irsho::params_from_kv(irsho::load_kv(path));
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

int irsho_scenario_from_string(const char* text, irsho_scenario** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    auto* s = new irsho_scenario{};
    try {
      s->p = irsho::params_from_kv(irsho::parse_kv(text));
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

int irsho_scenario_set(irsho_scenario* s, const char* key, const char* value) {
  return guarded([&] {
    need(s, "scenario");
    need(key, "key");
    need(value, "value");
    irsho::apply_param(s->p, key, value);
  });
}

int irsho_scenario_get(const irsho_scenario* s, const char* key, double* out) {
  return guarded([&] {
    need(s, "scenario");
    need(key, "key");
    need(out, "out");
    *out = irsho::get_param(s->p, key);
  });
}

int irsho_scenario_validate(const irsho_scenario* s, char** report) {
  if (report) *report = nullptr;
  return guarded([&] {
    need(s, "scenario");
    if (report) {
      std::string all;
      for (const auto& v : irsho::Scenario::violations(s->p)) all += v + "\n";
      *report = dup_string(all);
    }
    (void)irsho::Scenario::validate(s->p);
  });
}

int irsho_scenario_to_string(const irsho_scenario* s, char** out) {
  return guarded([&] {
    need(s, "scenario");
    need(out, "out");
    *out = dup_string(irsho::params_to_kv(s->p));
  });
}

void irsho_scenario_destroy(irsho_scenario* s) { delete s; }

int irsho_bs_density(const irsho_scenario* s, double d_m, int exact_mode, double out[3]) {
  return guarded([&] {
    need(s, "scenario");
    need(out, "out");
    const irsho::Scenario sc = irsho::Scenario::validate(s->p);
    const irsho::Mode m = exact_mode ? irsho::Mode::Exact : irsho::Mode::Approx;
    for (int k = 0; k < 3; ++k)
      out[k] = irsho::per_m2_to_per_km2(irsho::bs_density(static_cast<irsho::LosState>(k), d_m, sc, m));
  });
}

int irsho_association(const irsho_scenario* s, double out[3]) {
  return guarded([&] {
    need(s, "scenario");
    need(out, "out");
    const irsho::Association a(irsho::Scenario::validate(s->p));
    const auto p = a.probs();
    out[0] = p.a_los;
    out[1] = p.a_nlos;
    out[2] = p.a_rlos;
  });
}

int irsho_transition(const irsho_scenario* s, double out[9]) {
  return guarded([&] {
    need(s, "scenario");
    need(out, "out");
    const irsho::Association a(irsho::Scenario::validate(s->p));
    const auto m = irsho::Transition(a).matrix();
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) out[3 * k + j] = m.p[k][j];
  });
}

int irsho_handover(const irsho_scenario* s, const irsho_ho_options* opt, irsho_ho_result* out) {
  return guarded([&] {
    need(s, "scenario");
    need(out, "out");
    irsho::HandoverOptions o;
    if (opt) {
      if (opt->qmc_nodes > 0) o.qmc_nodes = opt->qmc_nodes;
      if (opt->max_qmc_nodes > 0) o.max_qmc_nodes = opt->max_qmc_nodes;
      o.seed = opt->seed;
    }
    const irsho::Association a(irsho::Scenario::validate(s->p));
    const irsho::HoResult h = irsho::Handover(a, o).evaluate();
    out->h = h.h;
    out->qmc_nodes = h.qmc_nodes;
    for (int k = 0; k < 3; ++k) {
      out->h_given[k] = h.h_k[k];
      out->assoc[k] = h.assoc[static_cast<irsho::LosState>(k)];
      for (int j = 0; j < 3; ++j) out->trans[3 * k + j] = h.trans.p[k][j];
    }
  });
}

void irsho_mc_options_default(irsho_mc_options* opt) {
  if (!opt) return;
  opt->protocol = IRSHO_PROTO_HANDOVER;
  opt->n_drops = 100000;
  opt->seed = 1;
  opt->threads = 0;
  opt->d_fixed_m = 100.0;
  opt->sim_radius_m = 0.0;
}

int irsho_mc_run(const irsho_scenario* s, const irsho_mc_options* opt, irsho_mc_result* out) {
  return guarded([&] {
    need(s, "scenario");
    need(opt, "options");
    need(out, "out");
    if (opt->n_drops < 100) throw irsho::Error(irsho::Errc::InvalidArgument, "n_drops must be at least 100");
    irsho::mc::EstimateOptions o;
    o.n_drops = opt->n_drops;
    o.seed = opt->seed;
    o.threads = opt->threads;
    o.drop.protocol = to_protocol(opt->protocol);
    o.drop.d_fixed = opt->d_fixed_m;
    o.drop.sim_radius = opt->sim_radius_m;
    const irsho::mc::McResult r = irsho::mc::estimate(irsho::Scenario::validate(s->p), o);
    out->n_drops = r.n_drops;
    out->n_valid = r.n_valid;
    out->n_stuck = r.n_stuck;
    out->n_empty = r.n_empty;
    out->ho_count = r.ho_count;
    for (int k = 0; k < 3; ++k) {
      out->k_count[k] = r.k_count[k];
      out->ho_by_k[k] = r.ho_by_k[k];
      for (int j = 0; j < 3; ++j) out->kj_count[3 * k + j] = r.kj_count[k][j];
    }
  });
}

int irsho_world_dump(const irsho_scenario* s, uint64_t seed, uint64_t drop, double sim_radius_m, const char* path) {
  return guarded([&] {
    need(s, "scenario");
    need(path, "path");
    const irsho::Scenario sc = irsho::Scenario::validate(s->p);
    irsho::mc::WorldConfig wc;
    wc.sim_radius = sim_radius_m > 0 ? sim_radius_m : irsho::mc::default_sim_radius(sc.lambda_b());
    wc.seed = seed;
    wc.drop = drop;
    const irsho::mc::World w(sc, wc);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw irsho::Error(irsho::Errc::Io, std::string("cannot open '") + path + "'");
    w.dump(f);
    if (!f) throw irsho::Error(irsho::Errc::Io, std::string("write to '") + path + "' failed");
  });
}

int irsho_sweep_create(const irsho_scenario* base, const char* quantity, irsho_sweep** out) {
  return guarded([&] {
    need(base, "scenario");
    need(quantity, "quantity");
    need(out, "out");
    auto sw = std::make_unique<irsho_sweep>();
    sw->spec.base = base->p;
    sw->spec.quantity = irsho::parse_quantity(quantity);
    if (sw->spec.quantity == irsho::Quantity::Density) {
      sw->spec.param = "d_m";
      sw->spec.values = irsho::parse_values("25:300:25", "values");
    } else {
      sw->spec.param = "lambda_b_per_km2";
      sw->spec.values = {irsho::get_param(base->p, "lambda_b_per_km2")};
    }
    *out = sw.release();
  });
}

int irsho_sweep_set(irsho_sweep* sw, const char* key, const char* value) {
  return guarded([&] {
    need(sw, "sweep");
    need(key, "key");
    need(value, "value");
    const std::string k = key, v = value;
    irsho::SweepSpec& sp = sw->spec;
    if (k == "param") sp.param = v;
    else if (k == "values") sp.values = irsho::parse_values(v, k);
    else if (k == "series") {
      irsho::KeyValues kv;
      kv.entries.emplace_back("series", v);
      kv.entries.emplace_back("quantity", irsho::quantity_name(sp.quantity));
      kv.entries.emplace_back("sweep_param", sp.param);
      kv.entries.emplace_back("sweep_values", "0");
      // reuse the recipe grammar for series lists
      const irsho::Recipe r = irsho::parse_recipe(kv, "cli");
      sp.series = r.spec.series;
    } else if (k == "engine") sp.engine = irsho::parse_engine(v);
    else if (k == "mode") {
      if (v == "exact") sp.mode = irsho::Mode::Exact;
      else if (v == "approx") sp.mode = irsho::Mode::Approx;
      else throw irsho::Error(irsho::Errc::Config, "mode must be exact or approx");
    } else if (k == "drops") sp.drops = static_cast<std::uint64_t>(irsho::parse_double(v, k));
    else if (k == "seed") sp.seed = std::stoull(v);
    else if (k == "gate_sigma") sp.gate_sigma = irsho::parse_double(v, k);
    else if (k == "gate_abs") sp.gate_abs = irsho::parse_double(v, k);
    else if (k == "n_c") sp.n_c = irsho::parse_double(v, k);
    else if (k == "threads") sp.threads = static_cast<unsigned>(irsho::parse_double(v, k));
    else throw irsho::Error(irsho::Errc::Config, "unknown sweep key '" + k + "'");
  });
}

int irsho_sweep_describe(const irsho_sweep* sw, char** json) {
  return guarded([&] {
    need(sw, "sweep");
    need(json, "out");
    const irsho::SweepSpec& sp = sw->spec;
    nlohmann::json j;
    j["id"] = sw->id;
    j["title"] = sw->title;
    j["quantity"] = irsho::quantity_name(sp.quantity);
    j["engine"] = irsho::engine_name(sp.engine);
    j["param"] = sp.param;
    j["values"] = sp.values;
    j["drops"] = sp.drops;
    j["seed"] = sp.seed;
    nlohmann::json series = nlohmann::json::array();
    for (const auto& s : sp.series) {
      nlohmann::json o;
      o["label"] = s.label;
      for (const auto& [k, v] : s.overrides) o["overrides"][k] = v;
      series.push_back(o);
    }
    j["series"] = series;
    j["base"] = irsho::params_to_kv(sp.base);
    *json = dup_string(j.dump(2));
  });
}

int irsho_sweep_run(const irsho_sweep* sw, irsho_sweep_result** out) {
  return guarded([&] {
    need(sw, "sweep");
    need(out, "out");
    auto r = std::make_unique<irsho_sweep_result>();
    irsho::Progress prog;
    if (irsho::log_enabled()) prog = [](const std::string& m) { irsho::log_line("done " + m); };
    r->r = irsho::run_sweep(sw->spec, prog);
    *out = r.release();
  });
}

void irsho_sweep_destroy(irsho_sweep* sw) { delete sw; }

int irsho_recipe_list(char** json) {
  return guarded([&] {
    need(json, "out");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& id : irsho::recipe_ids()) {
      const irsho::Recipe r = irsho::load_recipe(id);
      arr.push_back({{"id", id}, {"title", r.title}, {"quantity", irsho::quantity_name(r.spec.quantity)}});
    }
    *json = dup_string(arr.dump(2));
  });
}

int irsho_recipe_load(const char* id, irsho_sweep** out) {
  return guarded([&] {
    need(id, "id");
    need(out, "out");
    const irsho::Recipe r = irsho::load_recipe(id);
    auto sw = std::make_unique<irsho_sweep>();
    sw->spec = r.spec;
    sw->id = r.id;
    sw->title = r.title;
    *out = sw.release();
  });
}

int irsho_result_csv(const irsho_sweep_result* r, char** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    std::ostringstream os;
    irsho::emit_csv(r->r.table(), os);
    *out = dup_string(os.str());
  });
}

int irsho_result_json(const irsho_sweep_result* r, char** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    nlohmann::json j;
    j["param"] = r->r.param;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r->r.rows) j["rows"].push_back(row_json(row));
    *out = dup_string(j.dump(2));
  });
}

int irsho_result_summary(const irsho_sweep_result* r, irsho_summary* out, char** report) {
  if (report) *report = nullptr;
  return guarded([&] {
    need(r, "result");
    std::ostringstream os;
    const irsho::CompareSummary s = irsho::compare_report(r->r, &os);
    if (out) {
      out->rows = s.rows;
      out->compared = s.compared;
      out->failures = s.failures;
      out->errors = s.errors;
      out->max_abs_diff = s.max_abs_diff;
    }
    if (report) *report = dup_string(os.str());
  });
}

void irsho_result_destroy(irsho_sweep_result* r) { delete r; }

}  // extern "C"
