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
#include <random>

#include "core/channel.hpp"
#include "core/error.hpp"

using namespace irsho;

TEST_SUITE("channel") {

TEST_CASE("direct powers follow the path-loss law") {
  Scenario s = Scenario::validate(ScenarioParams{});
  // configured K is referenced to 1 km
  CHECK(rx_power_direct(LosState::LoS, 1000.0, s) == doctest::Approx(s.p_t() * std::pow(10.0, -10.38)));
  CHECK(rx_power_direct(LosState::NLoS, 1000.0, s) == doctest::Approx(s.p_t() * std::pow(10.0, -14.54)));
  double r = rx_power_direct(LosState::LoS, 50, s) / rx_power_direct(LosState::LoS, 100, s);
  CHECK(r == doctest::Approx(std::pow(2.0, 2.09)));
  CHECK_THROWS_AS(rx_power_direct(LosState::LoS, 0.0, s), Error);
  CHECK_THROWS_AS(rx_power_direct(LosState::RLoS, 10.0, s), Error);
}

TEST_CASE("reflected power") {
  Scenario s = Scenario::validate(ScenarioParams{});
  double p = rx_power_reflected(20, 80, s);
  CHECK(p == doctest::Approx(s.p_t() * s.k_l() * s.k_l() * s.g_bf() * std::pow(1600.0, -2.09)));
  CHECK(rx_power_reflected(10, 160, s) == doctest::Approx(p));
  CHECK_THROWS_AS(rx_power_reflected(0, 10, s), Error);
}

TEST_CASE("beamforming gain closed form") {
  const double m = 10, n = 500;
  const double g = std::tgamma(m + 0.5) / std::tgamma(m);
  CHECK(beamforming_gain(500, m) == doctest::Approx(n * n + n * (1 - std::pow(g, 4) / (m * m))));
  // m = 1: Gamma(1.5)^4 = pi^2/16
  CHECK(beamforming_gain(1, 1.0) == doctest::Approx(2.0 - M_PI * M_PI / 16.0));
}

TEST_CASE("per-element term is the variance of a Nakagami product") {
  // sqrt(h1) sqrt(h2) with h ~ Gamma(m, 1/m): second moment 1, so the linear
  // coefficient of the gain equals 1 - E[sqrt(h1 h2)]^2
  for (double m : {1.0, 3.0, 10.0}) {
    std::mt19937_64 rng(42);
    std::gamma_distribution<double> h(m, 1.0 / m);
    const int n = 400000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      double a = std::sqrt(h(rng) * h(rng));
      s1 += a;
      s2 += a * a;
    }
    const double mean = s1 / n;
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
    const double coef = beamforming_gain(1, m) - 1.0;
    CHECK(coef == doctest::Approx(1.0 - mean * mean).epsilon(0.03));
  }
}

}
