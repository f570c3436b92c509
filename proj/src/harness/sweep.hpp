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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/handover.hpp"
#include "core/spatial.hpp"
#include "harness/csv.hpp"

namespace irsho {

enum class Engine { Analytic, Mc, Both };
enum class Quantity { Density, Association, Transition, Handover };

const char* engine_name(Engine e);
const char* quantity_name(Quantity q);
Engine parse_engine(const std::string& s);
Quantity parse_quantity(const std::string& s);

// One curve of a figure: scenario overrides in config units.
struct Series {
  std::string label;
  std::vector<std::pair<std::string, std::string>> overrides;
};

struct SweepSpec {
  ScenarioParams base;
  std::string param;  // scenario key, or "d_m" for the density quantity
  std::vector<double> values;
  std::vector<Series> series;  // empty means a single unnamed curve
  Engine engine = Engine::Analytic;
  Quantity quantity = Quantity::Handover;
  Mode mode = Mode::Approx;
  std::uint64_t drops = 100000;
  std::uint64_t seed = 1;
  double gate_sigma = 1.96;  // row passes if |diff| <= max(gate_sigma * sigma, gate_abs)
  double gate_abs = 0.02;
  std::optional<double> n_c;  // elements per cell; derives N = n_c * lambda_b / lambda_i
  double d_fixed_m = 100.0;
  unsigned threads = 0;
  HandoverOptions handover;
};

struct ComparisonRow {
  std::string series;
  double value = 0;
  std::string metric, unit;
  std::optional<double> analytic;
  std::optional<double> mc_mean, mc_ci;
  std::optional<double> abs_diff;
  bool pass = true;
  std::string status = "ok";
};

struct SweepResult {
  std::string param;
  std::vector<ComparisonRow> rows;
  Table table() const;
};

// Scenario parameters of one sweep point (series overrides, swept value, N_c rule).
ScenarioParams point_params(const SweepSpec& spec, const Series* series, double value);

using Progress = std::function<void(const std::string&)>;
SweepResult run_sweep(const SweepSpec& spec, const Progress& progress = {});

struct CompareSummary {
  std::size_t rows = 0, compared = 0, failures = 0, errors = 0;
  double max_abs_diff = 0;
  bool pass() const { return failures == 0 && errors == 0; }
};
CompareSummary compare_report(const SweepResult& r, std::ostream* os = nullptr);

}  // namespace irsho
