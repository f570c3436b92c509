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
#include "harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <thread>

#include "core/config.hpp"
#include "core/error.hpp"
#include "mc/sim.hpp"

namespace irsho {

namespace {
constexpr LosState kStates[3] = {LosState::LoS, LosState::NLoS, LosState::RLoS};

struct Metric {
  std::string name, unit;
  std::optional<double> value;
  std::optional<double> ci;
};

std::vector<Metric> analytic_metrics(const SweepSpec& spec, const Scenario& s, double value) {
  std::vector<Metric> out;
  if (spec.quantity == Quantity::Density) {
    for (LosState k : kStates)
      out.push_back({std::string("lambda_") + los_name(k), "per_km2",
                     per_m2_to_per_km2(bs_density(k, value, s, spec.mode)), {}});
    return out;
  }
  const Association a(s);
  const AssociationProbs ap = a.probs();
  if (spec.quantity == Quantity::Association) {
    for (LosState k : kStates) out.push_back({std::string("A_") + los_name(k), "probability", ap[k], {}});
    return out;
  }
  if (spec.quantity == Quantity::Transition) {
    const Transition tr(a, spec.handover.transition);
    for (LosState k : kStates) {
      const bool ok = ap[k] > 1e-12;
      std::array<double, 3> row{};
      if (ok) row = tr.row(k);
      for (LosState j : kStates) {
        Metric m{std::string("P_") + los_name(k) + los_name(j), "probability", {}, {}};
        if (ok) m.value = row[static_cast<int>(j)];
        out.push_back(m);
      }
    }
    return out;
  }
  const HoResult h = Handover(a, spec.handover).evaluate();
  out.push_back({"H", "probability", h.h, {}});
  for (LosState k : kStates) {
    Metric m{std::string("H_given_") + los_name(k), "probability", {}, {}};
    if (ap[k] > 1e-12) m.value = h.h_k[static_cast<int>(k)];
    out.push_back(m);
  }
  return out;
}

std::vector<Metric> mc_metrics(const SweepSpec& spec, const Scenario& s, double value, unsigned threads) {
  mc::EstimateOptions o;
  o.n_drops = spec.drops;
  o.seed = spec.seed;
  o.threads = threads;
  switch (spec.quantity) {
    case Quantity::Density: o.drop.protocol = mc::Protocol::Density; break;
    case Quantity::Association: o.drop.protocol = mc::Protocol::Association; break;
    case Quantity::Transition: o.drop.protocol = mc::Protocol::Transition; break;
    case Quantity::Handover: o.drop.protocol = mc::Protocol::Handover; break;
  }
  o.drop.d_fixed = value;
  const mc::McResult r = mc::estimate(s, o);
  std::vector<Metric> out;
  auto put = [&](std::string name, const char* unit, const mc::EstimateWithCI& e, double scale) {
    Metric m{std::move(name), unit, {}, {}};
    if (e.n > 0) {
      m.value = e.mean * scale;
      m.ci = e.ci * scale;
    }
    out.push_back(m);
  };
  if (spec.quantity == Quantity::Density) {
    const double lb = per_m2_to_per_km2(s.lambda_b());
    for (LosState k : kStates) put(std::string("lambda_") + los_name(k), "per_km2", r.state(k), lb);
  } else if (spec.quantity == Quantity::Association) {
    for (LosState k : kStates) put(std::string("A_") + los_name(k), "probability", r.state(k), 1.0);
  } else if (spec.quantity == Quantity::Transition) {
    for (LosState k : kStates)
      for (LosState j : kStates)
        put(std::string("P_") + los_name(k) + los_name(j), "probability", r.transition(k, j), 1.0);
  } else {
    put("H", "probability", r.handover(), 1.0);
    for (LosState k : kStates) put(std::string("H_given_") + los_name(k), "probability", r.handover_given(k), 1.0);
  }
  return out;
}

std::vector<ComparisonRow> run_point(const SweepSpec& spec, const Series* series, double value, unsigned mc_threads) {
  const std::string label = series ? series->label : "";
  std::vector<ComparisonRow> rows;
  try {
    const Scenario s = Scenario::validate(point_params(spec, series, value));
    std::vector<Metric> an, mc;
    if (spec.engine != Engine::Mc) an = analytic_metrics(spec, s, value);
    if (spec.engine != Engine::Analytic) mc = mc_metrics(spec, s, value, mc_threads);
    const size_t n = std::max(an.size(), mc.size());
    for (size_t i = 0; i < n; ++i) {
      ComparisonRow r;
      r.series = label;
      r.value = value;
      const Metric& ref = i < an.size() ? an[i] : mc[i];
      r.metric = ref.name;
      r.unit = ref.unit;
      if (i < an.size()) r.analytic = an[i].value;
      if (i < mc.size()) {
        r.mc_mean = mc[i].value;
        r.mc_ci = mc[i].ci;
      }
      if (r.analytic && r.mc_mean) {
        r.abs_diff = std::fabs(*r.analytic - *r.mc_mean);
        const double sigma = *r.mc_ci / 1.96;
        r.pass = *r.abs_diff <= std::max(spec.gate_sigma * sigma, spec.gate_abs);
      }
      rows.push_back(r);
    }
  } catch (const Error& e) {
    ComparisonRow r;
    r.series = label;
    r.value = value;
    r.metric = "error";
    r.pass = false;
    r.status = std::string(errc_name(e.code())) + ": " + e.what();
    rows.push_back(r);
  }
  return rows;
}

std::string opt_str(const std::optional<double>& v) { return v ? format_double(*v) : ""; }
}  // namespace

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::Mc: return "mc";
    case Engine::Both: return "both";
  }
  return "?";
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Density: return "density";
    case Quantity::Association: return "association";
    case Quantity::Transition: return "transition";
    case Quantity::Handover: return "handover";
  }
  return "?";
}

Engine parse_engine(const std::string& s) {
  if (s == "analytic") return Engine::Analytic;
  if (s == "mc") return Engine::Mc;
  if (s == "both") return Engine::Both;
  throw Error(Errc::Config, "engine must be analytic, mc or both (got '" + s + "')");
}

Quantity parse_quantity(const std::string& s) {
  if (s == "density") return Quantity::Density;
  if (s == "association") return Quantity::Association;
  if (s == "transition") return Quantity::Transition;
  if (s == "handover") return Quantity::Handover;
  throw Error(Errc::Config, "unknown quantity '" + s + "'");
}

ScenarioParams point_params(const SweepSpec& spec, const Series* series, double value) {
  ScenarioParams p = spec.base;
  if (series)
    for (const auto& [k, v] : series->overrides) apply_param(p, k, v);
  if (spec.param != "d_m" && !spec.param.empty()) apply_param(p, spec.param, format_double(value));
  if (spec.n_c) {
    const double li = p.mu * p.lambda_o;
    if (li > 0) p.n_elements = std::max(1, static_cast<int>(std::lround(*spec.n_c * p.lambda_b / li)));
  }
  return p;
}

Table SweepResult::table() const {
  Table t;
  t.header = {"series", param.empty() ? "value" : param, "metric", "unit", "analytic", "mc_mean", "mc_ci95_halfwidth",
              "abs_diff", "pass", "status"};
  for (const auto& r : rows)
    t.rows.push_back({r.series, format_double(r.value), r.metric, r.unit, opt_str(r.analytic), opt_str(r.mc_mean),
                      opt_str(r.mc_ci), opt_str(r.abs_diff), r.pass ? "1" : "0", r.status});
  return t;
}

SweepResult run_sweep(const SweepSpec& spec, const Progress& progress) {
  if (spec.values.empty()) throw Error(Errc::Config, "sweep: value list is empty");
  if (spec.param.empty()) throw Error(Errc::Config, "sweep: no swept parameter");
  if (spec.param == "d_m") {
    if (spec.quantity != Quantity::Density) throw Error(Errc::Config, "sweep: d_m applies to the density quantity");
  } else if (!is_scenario_key(spec.param)) {
    throw Error(Errc::Config, "sweep: unknown parameter '" + spec.param + "'");
  }
  struct Job {
    const Series* series;
    double value;
  };
  std::vector<Job> jobs;
  if (spec.series.empty()) {
    for (double v : spec.values) jobs.push_back({nullptr, v});
  } else {
    for (const auto& s : spec.series)
      for (double v : spec.values) jobs.push_back({&s, v});
  }
  std::vector<std::vector<ComparisonRow>> out(jobs.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned pool = spec.threads ? spec.threads : hw;
  // MC parallelizes over drops already
  if (spec.engine != Engine::Analytic) pool = 1;
  pool = std::min<unsigned>(pool, static_cast<unsigned>(jobs.size()));
  std::atomic<size_t> next{0};
  std::mutex mu;
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      out[i] = run_point(spec, jobs[i].series, jobs[i].value, spec.threads);
      if (progress) {
        std::lock_guard<std::mutex> lk(mu);
        progress((jobs[i].series ? jobs[i].series->label + " " : std::string()) + spec.param + "=" +
                 format_double(jobs[i].value));
      }
    }
  };
  std::vector<std::thread> th;
  for (unsigned t = 1; t < pool; ++t) th.emplace_back(worker);
  worker();
  for (auto& t : th) t.join();
  SweepResult r;
  r.param = spec.param;
  for (auto& v : out)
    for (auto& row : v) r.rows.push_back(std::move(row));
  return r;
}

CompareSummary compare_report(const SweepResult& r, std::ostream* os) {
  CompareSummary s;
  for (const auto& row : r.rows) {
    ++s.rows;
    if (row.metric == "error") {
      ++s.errors;
      if (os) *os << "ERROR " << row.series << " " << r.param << "=" << format_double(row.value) << ": " << row.status
                  << "\n";
      continue;
    }
    if (!row.abs_diff) continue;
    ++s.compared;
    s.max_abs_diff = std::max(s.max_abs_diff, *row.abs_diff);
    if (!row.pass) {
      ++s.failures;
      if (os) *os << "FAIL " << row.series << " " << r.param << "=" << format_double(row.value) << " " << row.metric
                  << " analytic=" << format_double(*row.analytic) << " mc=" << format_double(*row.mc_mean)
                  << " ci=" << format_double(*row.mc_ci) << "\n";
    }
  }
  if (os) *os << "compared " << s.compared << " rows, " << s.failures << " failed, " << s.errors
              << " errors, max |diff| = " << format_double(s.max_abs_diff) << "\n";
  return s;
}

}  // namespace irsho
