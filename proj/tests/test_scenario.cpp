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

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/scenario.hpp"

using namespace irsho;

TEST_SUITE("scenario") {

TEST_CASE("defaults validate and derive constants") {
  Scenario s = Scenario::validate(ScenarioParams{});
  CHECK(s.lambda_i() == doctest::Approx(0.5 * 500e-6));
  CHECK(s.e_l() == 10.0);
  CHECK(s.e_l2() == 100.0);
  CHECK(s.c_los() == doctest::Approx(2.0 * 500e-6 * 10.0 / M_PI));
  // K referenced to 1 m: K_SI = K * 1000^alpha
  CHECK(s.k_l() == doctest::Approx(std::pow(10.0, -10.38) * std::pow(1000.0, 2.09)).epsilon(1e-12));
  CHECK(s.k_n() == doctest::Approx(std::pow(10.0, -14.54) * std::pow(1000.0, 3.75)).epsilon(1e-12));
  CHECK(watt_to_dbm(s.p_t()) == doctest::Approx(24.0));
}

TEST_CASE("uniform length moments") {
  auto m = length_moments(LengthDist::uniform(5.0, 15.0));
  CHECK(m.e_l == doctest::Approx(10.0));
  CHECK(m.e_l2 == doctest::Approx((25.0 + 75.0 + 225.0) / 3.0));
}

TEST_CASE("invalid parameters map to error codes") {
  ScenarioParams p;
  p.mu = 1.5;
  try {
    Scenario::validate(p);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MuOutOfRange);
  }
  p = {};
  p.lambda_b = -1;
  CHECK_THROWS_AS(Scenario::validate(p), Error);
  p = {};
  p.length = LengthDist::uniform(8, 4);
  CHECK(Scenario::violations(p).size() == 1);
}

TEST_CASE("config parsing") {
  auto kv = parse_kv("# c\nlambda_b_per_km2 = 20\nmu=0.25 # tail\nirs_mode = \"exact_geometry\"\n");
  ScenarioParams p = params_from_kv(kv);
  CHECK(p.lambda_b == doctest::Approx(20e-6));
  CHECK(p.mu == 0.25);
  CHECK(p.irs_mode == IrsMode::ExactGeometry);
}

TEST_CASE("unknown keys are a hard error") {
  try {
    params_from_kv(parse_kv("lamda_o_per_km2 = 10\n"));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Config);
  }
  CHECK_THROWS_AS(parse_kv("no equals sign\n"), Error);
  CHECK_THROWS_AS(params_from_kv(parse_kv("mu = abc\n")), Error);
  CHECK_NOTHROW(params_from_kv(parse_kv("drops = 5\n"), {}, {"drops"}));
}

TEST_CASE("lambda_i sets mu regardless of key order") {
  auto a = params_from_kv(parse_kv("lambda_i_per_km2 = 93\nlambda_o_per_km2 = 200\n"));
  CHECK(a.mu == doctest::Approx(93.0 / 200.0));
  CHECK(get_param(a, "lambda_i_per_km2") == doctest::Approx(93.0));
}

TEST_CASE("params round trip through key=value text") {
  ScenarioParams p;
  p.lambda_b = 37e-6;
  p.length = LengthDist::uniform(3, 17);
  p.n_elements = 123;
  p.ho_include_rlos_candidates = true;
  ScenarioParams q = params_from_kv(parse_kv(params_to_kv(p)));
  CHECK(params_to_kv(q) == params_to_kv(p));
  CHECK(q.lambda_b == p.lambda_b);
  CHECK(q.length.l_min == 3);
  CHECK(q.ho_include_rlos_candidates);
}

TEST_CASE("unit conversions") {
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
  CHECK(per_km2_to_per_m2(1.0) == 1e-6);
}

}
