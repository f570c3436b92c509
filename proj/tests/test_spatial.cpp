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

#include "core/spatial.hpp"
#include "mc/world.hpp"

using namespace irsho;

namespace {

Scenario make(double lb, double lo, double mu, double l = 10, double dserve = 50) {
  ScenarioParams p;
  p.lambda_b = lb * 1e-6;
  p.lambda_o = lo * 1e-6;
  p.mu = mu;
  p.length = LengthDist::constant(l);
  p.d_serve = dserve;
  return Scenario::validate(p);
}

}  // namespace

TEST_SUITE("spatial") {

TEST_CASE("LoS probability") {
  Scenario s = make(10, 500, 0.5);
  CHECK(p_los(0, s) == 1.0);
  CHECK(p_los(100, s) == doctest::Approx(std::exp(-2 * 500e-6 * 10 / M_PI * 100)));
  CHECK(bs_density(LosState::LoS, 100, s) == doctest::Approx(10e-6 * p_los(100, s)));
}

TEST_CASE("thinned densities partition lambda_b") {
  for (Mode mode : {Mode::Approx, Mode::Exact}) {
    const int n = mode == Mode::Approx ? 50 : 8;
    for (double mu : {0.0, 0.3, 1.0}) {
      Scenario s = make(20, 300, mu, 15, 60);
      for (int i = 0; i < n; ++i) {
        const double d = 5.0 + 600.0 * i / (n - 1);
        double sum = 0;
        for (LosState k : {LosState::LoS, LosState::NLoS, LosState::RLoS}) {
          double v = bs_density(k, d, s, mode);
          CHECK(v >= 0.0);
          sum += v;
        }
        CHECK(std::fabs(sum - s.lambda_b()) <= 1e-9 * s.lambda_b());
      }
    }
  }
}

TEST_CASE("no IRSs means no reflected BSs") {
  Scenario s = make(10, 500, 0.0);
  CHECK(bs_density(LosState::RLoS, 120, s) == 0.0);
  CHECK(irs_availability(120, 0, s) == 0.0);
}

TEST_CASE("approximate mass closed form") {
  Scenario s = make(10, 500, 0.5);
  const double d = 90;
  QuadSpec q;
  q.rel_tol = 1e-11;
  double num = integrate_1d([&](double r) { return p_irs_hat_prime(r, d, s); }, 0, 50, q, {s.e_l()});
  CHECK(p_irs_hat(0, 50, d, s) == doctest::Approx(num).epsilon(1e-9));
  CHECK(p_irs_hat(30, 20, d, s) == 0.0);
}

TEST_CASE("far-field reconfiguration probability, averaged over angle") {
  Scenario s = make(10, 500, 0.5);
  const double c = 2 * s.lambda_o() * s.e_l() / M_PI;
  QuadSpec q;
  q.rel_tol = 1e-8;
  for (double d : {60.0, 100.0, 200.0})
    for (double r : {3 * s.e_l(), 40.0, 80.0}) {
      const double avg = integrate_1d([&](double th) { return p_irs_exact({r, th, d}, s); }, 0, M_PI, q) / M_PI;
      const double approx = 0.5 * std::exp(-c * (d + r));
      CHECK(std::fabs(avg - approx) < 0.1);
    }
}

TEST_CASE("mass derivative matches finite differences") {
  for (double lo : {100.0, 500.0}) {
    Scenario s = make(10, lo, 0.5, 10, 50);
    for (double d : {30.0, 100.0, 250.0}) {
      for (double r0 = 11.0; r0 < 50.0; r0 += 3.0) {
        const double h = 1e-4;
        double fd = (p_irs_hat(0, r0 + h, d, s) - p_irs_hat(0, r0 - h, d, s)) / (2 * h);
        double an = p_irs_hat_prime(r0, d, s);
        CHECK(std::fabs(fd - an) <= 1e-6 * std::max(1.0, std::fabs(an)));
      }
    }
  }
}

TEST_CASE("IRS angles") {
  auto a = irs_angles({30, M_PI / 2, 40});
  CHECK(a.d_prime == doctest::Approx(50));
  CHECK(a.theta1 + a.theta2 + a.theta3 == doctest::Approx(M_PI));
  CHECK(a.theta3 == doctest::Approx(M_PI / 2));
}

TEST_CASE("IRS availability against brute-force blockage drops") {
  using namespace irsho::mc;
  Scenario s = make(10, 500, 0.5);
  struct Case {
    double r, th, d;
  };
  for (Case c : {Case{20, 0.5, 100}, Case{40, 2.0, 100}, Case{10, 1.0, 60}}) {
    Point2D u{0, 0}, b{c.d, 0}, irs{c.r * std::cos(c.th), c.r * std::sin(c.th)};
    const double x0 = std::min(0.0, irs.x) - 20, x1 = std::max(c.d, irs.x) + 20;
    const double y0 = std::min(0.0, irs.y) - 20, y1 = std::max(0.0, irs.y) + 20;
    std::mt19937_64 g(7);
    std::poisson_distribution<int> count(s.lambda_o() * (x1 - x0) * (y1 - y0));
    std::uniform_real_distribution<double> uni(0, 1);
    long blocked = 0, ok = 0;
    for (int t = 0; t < 60000; ++t) {
      int n = count(g);
      bool direct = false, clear = true;
      for (int i = 0; i < n; ++i) {
        BlockageSegment seg{{x0 + uni(g) * (x1 - x0), y0 + uni(g) * (y1 - y0)}, 10, uni(g) * 2 * M_PI, false};
        direct |= segments_intersect(u, b, seg.end1(), seg.end2());
        clear &= !segments_intersect(u, irs, seg.end1(), seg.end2()) &&
                 !segments_intersect(irs, b, seg.end1(), seg.end2());
      }
      if (!direct) continue;
      ++blocked;
      const double beta = uni(g) * M_PI;
      Point2D dir{std::cos(beta), std::sin(beta)};
      bool same = (cross(dir, u - irs) > 0) == (cross(dir, b - irs) > 0);
      ok += clear && same;
    }
    const double pm = double(ok) / blocked, sd = std::sqrt(pm * (1 - pm) / blocked);
    INFO("r=" << c.r << " theta=" << c.th << " d=" << c.d);
    CHECK(std::fabs(p_irs_exact({c.r, c.th, c.d}, s) - pm) <= std::max(4 * sd, 0.005));
  }
}

TEST_CASE("serving IRS distance distribution") {
  Scenario s = make(10, 500, 0.5);
  const double d = 80;
  ServingIrsDistance f(d, s);
  CHECK(f.availability() == doctest::Approx(irs_availability(d, 0, s)));
  for (double r = 5; r < 50; r += 4.5) CHECK(f.cdf(r) == doctest::Approx(fr1_cdf(r, d, s)).epsilon(1e-12));
  QuadSpec q;
  q.rel_tol = 1e-10;
  CHECK(integrate_1d([&](double r) { return f.pdf(r); }, 0, 50, q, {s.e_l()}) == doctest::Approx(1.0).epsilon(1e-8));
  for (double r : {12.0, 25.0, 44.0}) {
    const double h = 1e-4;
    CHECK(f.pdf(r) == doctest::Approx((f.cdf(r + h) - f.cdf(r - h)) / (2 * h)).epsilon(1e-6));
  }
  for (double u : {0.1, 0.5, 0.9}) CHECK(f.cdf(f.quantile(u)) == doctest::Approx(u).epsilon(1e-8));
  CHECK(fr1_cdf(s.e_l(), d, s) == 0.0);
  CHECK(fr1_cdf(60, d, s) == 1.0);
}

TEST_CASE("serving IRS distance in exact mode") {
  Scenario s = make(10, 300, 0.6);
  ServingIrsDistance f(120, s, Mode::Exact);
  QuadSpec q;
  q.rel_tol = 1e-7;
  CHECK(integrate_1d([&](double r) { return f.pdf(r); }, 0, 50, q, {s.e_l()}) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(f.cdf(25) > 0.0);
  CHECK(f.cdf(25) < 1.0);
}

TEST_CASE("impossible RLoS conditioning throws") {
  Scenario s = make(10, 500, 0.0);
  CHECK_THROWS_AS(ServingIrsDistance(80, s), Error);
}

}
