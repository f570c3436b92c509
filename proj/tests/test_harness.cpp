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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "harness/csv.hpp"
#include "harness/recipes.hpp"
#include "harness/sweep.hpp"

using namespace irsho;

TEST_SUITE("harness") {

TEST_CASE("double formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("csv round trip with quoting") {
  Table t;
  t.header = {"a", "b,c", "d"};
  t.rows = {{"1", "x \"y\"", ""}, {"2.5", "plain", "line"}};
  std::ostringstream os;
  emit_csv(t, os);
  CHECK(parse_csv(os.str()) == t);
  std::ostringstream again;
  emit_csv(parse_csv(os.str()), again);
  CHECK(again.str() == os.str());
}

TEST_CASE("value lists") {
  auto r = parse_values("25:300:25", "v");
  CHECK(r.size() == 12);
  CHECK(r.back() == 300);
  auto l = parse_values("1, 2.8,6.7", "v");
  CHECK(l == std::vector<double>{1, 2.8, 6.7});
  CHECK(parse_values("0:1:0.1", "v").size() == 11);
  CHECK_THROWS_AS(parse_values("1:0:1", "v"), Error);
  CHECK_THROWS_AS(parse_values("a,b", "v"), Error);
}

TEST_CASE("every figure recipe loads") {
  auto ids = recipe_ids();
  for (const char* id : {"fig2", "fig3", "fig4a", "fig4b", "fig4c", "fig5", "fig6", "fig7", "fig8", "fig9"}) {
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    Recipe r = load_recipe(id);
    CHECK(!r.spec.values.empty());
    CHECK(!r.title.empty());
  }
  CHECK_THROWS_AS(load_recipe("fig99"), Error);
}

TEST_CASE("recipe grammar") {
  KeyValues kv = parse_kv(
      "title = t\nquantity = handover\nengine = both\nsweep_param = lambda_b_per_km2\n"
      "sweep_values = 1,2\nseries = a: mu=0.2 d_serve_m=20 | b: mu=0.8\nlambda_o_per_km2 = 200\n");
  Recipe r = parse_recipe(kv, "x");
  CHECK(r.spec.series.size() == 2);
  CHECK(r.spec.series[0].label == "a");
  CHECK(r.spec.series[0].overrides.size() == 2);
  CHECK(r.spec.base.lambda_o == doctest::Approx(200e-6));
  CHECK(r.spec.engine == Engine::Both);
  kv.entries.emplace_back("bogus", "1");
  CHECK_THROWS_AS(parse_recipe(kv, "x"), Error);
}

TEST_CASE("elements per cell rule") {
  SweepSpec sp;
  sp.base.lambda_o = 200e-6;
  sp.base.mu = 0.5;
  sp.param = "lambda_b_per_km2";
  sp.n_c = 3000;
  ScenarioParams p = point_params(sp, nullptr, 10);
  CHECK(p.lambda_b == doctest::Approx(10e-6));
  CHECK(p.n_elements == 300);  // 3000 * 10 / 100
}

TEST_CASE("analytic density sweep") {
  SweepSpec sp;
  sp.quantity = Quantity::Density;
  sp.param = "d_m";
  sp.values = {50, 100};
  auto r = run_sweep(sp);
  CHECK(r.rows.size() == 6);
  auto t = r.table();
  CHECK(t.header[0] == "series");
  CHECK(t.header[1] == "d_m");
  auto s = compare_report(r);
  CHECK(s.pass());
  CHECK(s.compared == 0);
}

TEST_CASE("comparison gate") {
  SweepResult r;
  ComparisonRow a;
  a.metric = "H";
  a.analytic = 0.30;
  a.mc_mean = 0.31;
  a.mc_ci = 0.005;
  a.abs_diff = 0.01;
  r.rows.push_back(a);
  CHECK(compare_report(r).pass());
  ComparisonRow b = a;
  b.pass = false;
  b.abs_diff = 0.05;
  r.rows.push_back(b);
  auto s = compare_report(r);
  CHECK(s.failures == 1);
  CHECK(s.max_abs_diff == doctest::Approx(0.05));
}

TEST_CASE("both engines gate each row") {
  SweepSpec sp;
  sp.quantity = Quantity::Association;
  sp.engine = Engine::Both;
  sp.param = "lambda_b_per_km2";
  sp.values = {10};
  sp.base.mu = 0.0;
  sp.drops = 3000;
  sp.gate_sigma = 1e6;  // everything passes
  auto r = run_sweep(sp);
  for (const auto& row : r.rows) {
    REQUIRE(row.analytic.has_value());
    REQUIRE(row.mc_mean.has_value());
    CHECK(row.pass);
  }
  sp.gate_sigma = 0;
  sp.gate_abs = 0;
  auto strict = compare_report(run_sweep(sp));
  CHECK(strict.failures > 0);
}

TEST_CASE("csv output is deterministic") {
  SweepSpec sp;
  sp.quantity = Quantity::Density;
  sp.engine = Engine::Both;
  sp.param = "d_m";
  sp.values = {75};
  sp.drops = 500;
  std::ostringstream a, b;
  emit_csv(run_sweep(sp).table(), a);
  emit_csv(run_sweep(sp).table(), b);
  CHECK(a.str() == b.str());
}

}
