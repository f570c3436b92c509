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
#include "core/spatial.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace irsho {

namespace {

constexpr double kPi = M_PI;
constexpr double kThetaEps = 1e-9;

// 1 - e^{-x}(1 + x), accurate for small x
double one_minus_exp_poly(double x) {
  if (x < 1e-3) return x * x * (0.5 - x * (1.0 / 3.0 - x * (0.125 - x / 30.0)));
  return -std::expm1(-x) - x * std::exp(-x);
}

// integral of r e^{-c r} over [a, b]
double int_r_exp(double c, double a, double b) {
  if (b <= a) return 0.0;
  if (c <= 0.0) return 0.5 * (b * b - a * a);
  return (one_minus_exp_poly(c * b) - one_minus_exp_poly(c * a)) / (c * c);
}

QuadSpec mass_spec() {
  QuadSpec q;
  q.rel_tol = 1e-7;
  q.abs_tol = 1e-12;
  return q;
}

}  // namespace

double p_los(double d, const Scenario& s) { return std::exp(-s.c_los() * std::max(d, 0.0)); }

IrsAngles irs_angles(const IrsGeometry& g) {
  const double th = std::fabs(g.theta);
  const double dp = std::sqrt(std::max(0.0, g.d * g.d + g.r * g.r - 2.0 * g.d * g.r * std::cos(th)));
  IrsAngles a{};
  a.d_prime = dp;
  a.theta3 = th;
  if (dp <= 0.0) {
    a.theta1 = a.theta2 = 0.0;
    return a;
  }
  a.theta1 = std::acos(std::clamp((g.r - g.d * std::cos(th)) / dp, -1.0, 1.0));
  a.theta2 = std::acos(std::clamp((g.d - g.r * std::cos(th)) / dp, -1.0, 1.0));
  return a;
}

double overlap_shape(double theta) {
  const double t = std::clamp(theta, kThetaEps, kPi - kThetaEps);
  return 0.5 + 0.5 * (kPi - t) / std::tan(t);
}

double p_irs_exact(const IrsGeometry& g, const Scenario& s) {
  if (!(g.r > 0) || !(g.d > 0)) return 0.0;
  const IrsAngles an = irs_angles(g);
  const double dp = an.d_prime;
  if (!(dp > 0)) return 0.0;
  const double lo = s.lambda_o();
  const double el = s.e_l(), el2 = s.e_l2();
  const double blocked = -std::expm1(-s.c_los() * g.d);
  if (!(blocked > 0)) return 0.0;
  const double k = el2 / (2.0 * kPi);
  const double strip = 2.0 / kPi * el;
  // expected overlap areas, capped by the smaller of the two regions
  const double s1 = std::min(k * overlap_shape(an.theta1), strip * std::min(dp, g.r));
  const double s2 = std::min(k * overlap_shape(an.theta2), strip * std::min(dp, g.d));
  const double s3 = std::min(k * overlap_shape(an.theta3), strip * std::min(g.d, g.r));
  const double first = std::max(0.0, std::exp(-lo * (s2 + s3)) - std::exp(-s.c_los() * g.d)) / blocked;
  const double second = std::exp(-lo * std::max(0.0, strip * (dp + g.r) - (s1 + s2 + s3)));
  const double eps = 1.0 - an.theta1 / kPi;
  return std::clamp(first * second * eps, 0.0, 1.0);
}

double p_irs_hat(double r_s, double r_e, double d, const Scenario& s) {
  if (!(r_e > r_s)) return 0.0;
  const double el = s.e_l();
  const double a = std::max(r_s, el), b = std::max(r_e, el);
  const double c = s.c_los();
  return kPi * std::exp(-c * d) * int_r_exp(c, a, b);
}

double p_irs_hat_prime(double r0, double d, const Scenario& s) {
  if (r0 <= s.e_l() || r0 > s.d_serve()) return 0.0;
  return kPi * r0 * std::exp(-s.c_los() * (d + r0));
}

double irs_mass(double r_s, double r_e, double d, const Scenario& s, Mode mode) {
  if (!(r_e > r_s)) return 0.0;
  if (mode == Mode::Approx) return p_irs_hat(r_s, r_e, d, s);
  // symmetric in theta: twice the upper half-plane
  const QuadSpec q = mass_spec();
  std::vector<double> rb;
  if (s.e_l() > r_s && s.e_l() < r_e) rb.push_back(s.e_l());
  if (d > r_s && d < r_e) rb.push_back(d);
  double v = integrate_1d(
      [&](double th) {
        return integrate_1d([&](double r) { return p_irs_exact({r, th, d}, s) * r; }, r_s, r_e, q, rb);
      },
      0.0, kPi, q);
  return 2.0 * v;
}

double irs_availability(double d, double r, const Scenario& s, Mode mode) {
  if (r >= s.d_serve() || s.lambda_i() <= 0.0) return 0.0;
  return -std::expm1(-s.lambda_i() * irs_mass(std::max(r, 0.0), s.d_serve(), d, s, mode));
}

double bs_density(LosState state, double d, const Scenario& s, Mode mode) {
  const double pl = p_los(d, s);
  if (state == LosState::LoS) return s.lambda_b() * pl;
  const double a = irs_availability(d, 0.0, s, mode);
  if (state == LosState::NLoS) return s.lambda_b() * (1.0 - pl) * (1.0 - a);
  return s.lambda_b() * (1.0 - pl) * a;
}

double fr1_cdf(double r, double d, const Scenario& s) {
  if (r <= s.e_l()) return 0.0;
  if (r >= s.d_serve()) return 1.0;
  const double li = s.lambda_i();
  const double den = -std::expm1(-li * p_irs_hat(0.0, s.d_serve(), d, s));
  if (!(den > 0)) return 0.0;
  return -std::expm1(-li * p_irs_hat(0.0, r, d, s)) / den;
}

ServingIrsDistance::ServingIrsDistance(double d, const Scenario& s, Mode mode) : d_(d), s_(&s), mode_(mode) {
  if (!(d > 0)) throw Error(Errc::InvalidArgument, "serving_irs_distance: d must be > 0");
  den_ = -std::expm1(-s.lambda_i() * irs_mass(0.0, s.d_serve(), d, s, mode));
  if (!(den_ > 1e-12)) throw Error(Errc::DegenerateCondition, "RLoS conditioning impossible at this distance");
}

double ServingIrsDistance::mass_to(double r) const { return irs_mass(0.0, r, d_, *s_, mode_); }

double ServingIrsDistance::cdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= s_->d_serve()) return 1.0;
  return -std::expm1(-s_->lambda_i() * mass_to(r)) / den_;
}

double ServingIrsDistance::pdf(double r) const {
  if (r <= 0.0 || r > s_->d_serve()) return 0.0;
  const double li = s_->lambda_i();
  double ring;
  if (mode_ == Mode::Approx) {
    ring = p_irs_hat_prime(r, d_, *s_);
  } else {
    ring = 2.0 * integrate_1d([&](double th) { return p_irs_exact({r, th, d_}, *s_) * r; }, 0.0, M_PI, mass_spec());
  }
  return li * std::exp(-li * mass_to(r)) * ring / den_;
}

double ServingIrsDistance::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  double lo = mode_ == Mode::Approx ? s_->e_l() : 0.0, hi = s_->d_serve();
  if (lo >= hi) return hi;
  for (int i = 0; i < 60 && hi - lo > 1e-10 * s_->d_serve(); ++i) {
    double m = 0.5 * (lo + hi);
    if (cdf(m) < u) lo = m;
    else hi = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace irsho
