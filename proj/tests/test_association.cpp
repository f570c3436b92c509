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

#include "core/association.hpp"
#include "core/channel.hpp"

using namespace irsho;

namespace {

Scenario make(double lb, double lo, double mu, int n = 500, double dserve = 50) {
  ScenarioParams p;
  p.lambda_b = lb * 1e-6;
  p.lambda_o = lo * 1e-6;
  p.mu = mu;
  p.n_elements = n;
  p.d_serve = dserve;
  return Scenario::validate(p);
}

// Drops the thinned point processes directly and picks the strongest link.
std::array<double, 3> sampled_association(const Scenario& s, int drops, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0, 1);
  const double radius = 3000;
  std::poisson_distribution<int> count(s.lambda_b() * M_PI * radius * radius);
  std::array<double, 3> hits{};
  for (int t = 0; t < drops; ++t) {
    int n = count(g), best = -1;
    double best_p = 0;
    for (int i = 0; i < n; ++i) {
      const double x = radius * std::sqrt(u(g));
      const double pl = p_los(x, s), pr = (1 - pl) * irs_availability(x, 0, s);
      const double v = u(g);
      int st;
      double pw;
      if (v < pl) {
        st = 0;
        pw = rx_power_direct(LosState::LoS, x, s);
      } else if (v < pl + pr) {
        st = 2;
        pw = rx_power_reflected(ServingIrsDistance(x, s).quantile(u(g)), x, s);
      } else {
        st = 1;
        pw = rx_power_direct(LosState::NLoS, x, s);
      }
      if (pw > best_p) {
        best_p = pw;
        best = st;
      }
    }
    if (best >= 0) hits[best] += 1.0;
  }
  for (auto& h : hits) h /= drops;
  return hits;
}

}  // namespace

TEST_SUITE("association") {

TEST_CASE("probabilities sum to one") {
  for (auto [lb, lo, mu] : {std::tuple{10.0, 500.0, 0.5}, std::tuple{50.0, 100.0, 1.0}, std::tuple{2.0, 300.0, 0.1},
                            std::tuple{10.0, 500.0, 0.0}}) {
    Association a(make(lb, lo, mu));
    auto p = a.probs();
    INFO("lb=" << lb << " lo=" << lo << " mu=" << mu);
    CHECK(p.sum() >= 0.999);
    CHECK(p.sum() <= 1.001);
    CHECK(p.a_los >= 0);
    CHECK(p.a_nlos >= 0);
    CHECK(p.a_rlos >= 0);
  }
}

TEST_CASE("no IRSs gives exactly zero reflected association") {
  Association a(make(10, 500, 0.0));
  CHECK(a.probs().a_rlos == 0.0);
  CHECK(a.xi(LosState::RLoS, 100) == 0.0);
}

TEST_CASE("reflected association grows with mu") {
  double prev = -1;
  for (double mu : {0.1, 0.4, 1.0}) {
    double ar = Association(make(10, 100, mu)).probs().a_rlos;
    CHECK(ar > prev);
    prev = ar;
  }
}

TEST_CASE("reflected association does not fall with more elements") {
  double prev = -1;
  for (int n : {50, 100, 200, 500, 1000}) {
    double ar = Association(make(10, 500, 0.5, n)).probs().a_rlos;
    CHECK(ar >= prev - 1e-9);
    prev = ar;
  }
}

TEST_CASE("cumulative LoS density closed form") {
  Scenario s = make(10, 500, 0.5);
  Association a(s);
  const double c = s.c_los();
  for (double y : {10.0, 100.0, 700.0}) {
    const double exact = 2 * M_PI * s.lambda_b() * (1 - std::exp(-c * y) * (1 + c * y)) / (c * c);
    CHECK(a.lambda_cum(LosState::LoS, y) == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("serving distance distributions are normalized") {
  Association a(make(10, 500, 0.5));
  for (LosState k : {LosState::LoS, LosState::NLoS, LosState::RLoS}) {
    QuadSpec q;
    q.rel_tol = 1e-8;
    double m = integrate_1d([&](double x) { return a.serving_pdf(k, x); }, 0, a.support_max(k), q);
    CHECK(m == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(a.serving_cdf(k, a.support_max(k)) == doctest::Approx(1.0).epsilon(1e-6));
    const double x = a.serving_quantile(k, 0.5);
    // quantiles come from a tabulated inverse
    CHECK(std::fabs(a.serving_cdf(k, x) - 0.5) < 1e-4);
  }
}

TEST_CASE("win probabilities lie in [0, 1] and fall with distance") {
  Association a(make(10, 500, 0.5));
  for (LosState k : {LosState::LoS, LosState::NLoS, LosState::RLoS}) {
    double prev = 2;
    for (double y = 20; y < 600; y += 60) {
      double v = a.xi(k, y);
      CHECK(v >= 0);
      CHECK(v <= 1);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("equivalent radii invert each other") {
  EquivalentRadii e(make(10, 500, 0.5));
  for (double d : {10.0, 80.0, 400.0}) CHECK(e.d_tilde_l(e.d_tilde_n(d)) == doctest::Approx(d));
}

TEST_CASE("matches sampled thinned processes") {
  for (auto [lb, lo, mu] : {std::tuple{10.0, 500.0, 0.5}, std::tuple{5.0, 100.0, 1.0}}) {
    Scenario s = make(lb, lo, mu);
    auto p = Association(s).probs();
    auto m = sampled_association(s, 6000, 3);
    INFO("lb=" << lb << " lo=" << lo << " mu=" << mu);
    for (int k = 0; k < 3; ++k) {
      const double pk = p[static_cast<LosState>(k)];
      CHECK(std::fabs(pk - m[k]) <= std::max(4 * std::sqrt(pk * (1 - pk) / 6000), 0.005));
    }
  }
}

}
