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
#include "core/transition.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/lowdisc.hpp"
#include "core/spatial.hpp"

namespace irsho {

namespace {
constexpr double kPi = M_PI;
constexpr double kInf = std::numeric_limits<double>::infinity();

double trapezoid(double l, double a, double amax) {
  if (std::isinf(amax)) return l * a;
  return l * a * (1.0 - a / (2.0 * amax));
}

QuadSpec beta_spec() {
  QuadSpec q;
  q.rel_tol = 1e-9;
  q.abs_tol = 1e-9;
  return q;
}
}  // namespace

LinkMove LinkMove::make(double x1, double phi1, double v) {
  LinkMove m;
  m.x1 = x1;
  m.v = v;
  double p = std::fabs(std::remainder(phi1, 2.0 * kPi));
  m.phi1 = std::min(p, kPi);
  m.x2 = std::sqrt(std::max(0.0, x1 * x1 + v * v - 2.0 * x1 * v * std::cos(m.phi1)));
  const double sy = x1 * std::sin(m.phi1);
  if (m.x2 > 0) {
    m.phi2 = std::atan2(sy, x1 * std::cos(m.phi1) - v);
    // exact forms; differences of nearly equal angles lose digits near collinearity
    m.sin_dphi = v * std::sin(m.phi1) / m.x2;
    m.sin_phi2 = sy / m.x2;
  } else {
    m.phi2 = kPi;
  }
  if (m.phi2 < m.phi1) m.phi2 = m.phi1;
  return m;
}

double overlap_area(double beta, const LinkMove& m, double l) {
  if (beta >= m.phi1 && beta <= m.phi2) return 0.0;
  const double s1 = std::fabs(std::sin(m.phi1 - beta));
  const double s2 = std::fabs(std::sin(m.phi2 - beta));
  const double den = m.sin_dphi;
  const double amax = den > 1e-14 ? l * s1 * s2 / den : kInf;
  const double a = std::min({m.x1 * s1, m.x2 * s2, amax});
  return trapezoid(l, a, amax);
}

double escape_area(double beta, const LinkMove& m, double l) {
  if (beta >= m.phi2 || m.v <= 0.0) return 0.0;
  const double sb = std::sin(beta);
  const double sp = std::sin(m.phi2 - beta);
  const double den = m.sin_phi2;
  const double amax = den > 1e-14 ? l * sb * sp / den : kInf;
  const double b = std::min({m.v * sb, m.x2 * sp, amax});
  return trapezoid(l, b, amax);
}

LinkAreas link_areas(const LinkMove& m, const Scenario& s) {
  LinkAreas out;
  out.s1 = 2.0 / kPi * s.e_l() * m.x1;
  out.s2 = 2.0 / kPi * s.e_l() * m.x2;
  const QuadSpec q = beta_spec();
  auto at_length = [&](double l) {
    double ov = integrate_1d([&](double b) { return overlap_area(b, m, l); }, 0.0, m.phi1, q) +
                integrate_1d([&](double b) { return overlap_area(b, m, l); }, m.phi2, kPi, q);
    double es = integrate_1d([&](double b) { return escape_area(b, m, l); }, 0.0, m.phi2, q);
    return std::array<double, 2>{ov / kPi, es / kPi};
  };
  const auto& len = s.params().length;
  if (len.kind == LengthDist::Kind::Constant || len.l_max - len.l_min <= 0) {
    auto r = at_length(len.l_max);
    out.overlap = r[0];
    out.escape = r[1];
  } else {
    using gl = boost::math::quadrature::gauss<double, 10>;
    double ov = 0, es = 0;
    const double c = 0.5 * (len.l_min + len.l_max), h = 0.5 * (len.l_max - len.l_min);
    for (size_t i = 0; i < gl::abscissa().size(); ++i) {
      const double w = gl::weights()[i];
      for (double sgn : {-1.0, 1.0}) {
        if (i == 0 && sgn > 0 && gl::abscissa()[0] == 0.0) continue;
        auto r = at_length(c + sgn * h * gl::abscissa()[i]);
        ov += 0.5 * w * r[0];
        es += 0.5 * w * r[1];
      }
    }
    out.overlap = ov;
    out.escape = es;
  }
  return out;
}

LinkTransition link_transition(const LinkMove& m, const Scenario& s) {
  if (!(m.x1 > 0)) throw Error(Errc::InvalidArgument, "link_transition: x1 must be > 0");
  const LinkAreas a = link_areas(m, s);
  const double lo = s.lambda_o();
  LinkTransition t;
  t.p_ll = std::exp(-lo * std::max(0.0, a.s2 - a.overlap - a.escape));
  t.p_ln = 1.0 - t.p_ll;
  const double den = -std::expm1(-lo * a.s1);
  const double free2 = std::exp(-lo * std::max(0.0, a.s2 - a.escape));
  double ratio;
  if (den > 1e-300) ratio = -std::expm1(-lo * std::max(0.0, a.s1 - a.overlap)) / den;
  else ratio = a.s1 > 0 ? std::max(0.0, a.s1 - a.overlap) / a.s1 : 0.0;
  t.p_nl = std::clamp(ratio * free2, 0.0, 1.0);
  t.p_nn = 1.0 - t.p_nl;
  return t;
}

double TransitionMatrix::row_sum(LosState k) const {
  const int i = static_cast<int>(k);
  return p[i][0] + p[i][1] + p[i][2];
}

Transition::Transition(const Association& assoc, const TransitionOptions& opt) : as_(&assoc), opt_(opt) {}

std::array<double, 3> Transition::row_direct(LosState k) const {
  const Scenario& s = as_->scenario();
  const int nphi = std::max(2, opt_.phi_nodes / 2);  // mirror symmetry halves the rule
  QuadSpec q;
  q.rel_tol = 1e-6;
  q.abs_tol = 1e-9;
  auto f = [&](double x) {
    std::array<double, 3> acc{0, 0, 0};
    if (x <= 0) return acc;
    const double w = as_->serving_pdf(k, x);
    if (w <= 0) return acc;
    for (int i = 0; i < nphi; ++i) {
      const double phi = (i + 0.5) * kPi / nphi;
      const LinkMove m = LinkMove::make(x, phi, s.v());
      const LinkTransition t = link_transition(m, s);
      const double stay = k == LosState::LoS ? t.p_ll : t.p_nl;  // to LoS
      const double pi = irs_availability(m.x2, 0.0, s);
      acc[0] += stay;
      acc[1] += (1.0 - stay) * (1.0 - pi);
      acc[2] += (1.0 - stay) * pi;
    }
    for (double& a : acc) a *= w / nphi;
    return acc;
  };
  return integrate_1d_vec<3>(f, 0.0, as_->support_max(k), q);
}

std::array<double, 3> Transition::row_reflected() const {
  const Scenario& s = as_->scenario();
  const LosState k = LosState::RLoS;
  const int nphi = std::max(2, opt_.phi_nodes / 2);
  QuadSpec q;
  q.rel_tol = 1e-6;
  q.abs_tol = 1e-9;
  // blocked serving link turning LoS again
  auto f = [&](double x) {
    std::array<double, 1> acc{0};
    if (x <= 0) return acc;
    const double w = as_->serving_pdf(k, x);
    for (int i = 0; i < nphi; ++i) {
      const double phi = (i + 0.5) * kPi / nphi;
      acc[0] += link_transition(LinkMove::make(x, phi, s.v()), s).p_nl;
    }
    acc[0] *= w / nphi;
    return acc;
  };
  const double p_rl = integrate_1d_vec<1>(f, 0.0, as_->support_max(k), q)[0];
  // reflected path lost and no other IRS beyond r2 at the new position
  const auto pts = shifted_sobol(static_cast<size_t>(opt_.qmc_nodes), 4, opt_.seed);
  double x_sum = 0.0;
  for (int i = 0; i < opt_.qmc_nodes; ++i) {
    const double* u = &pts[static_cast<size_t>(i) * 4];
    const double x1 = as_->serving_quantile(k, u[0]);
    if (!(x1 > 0)) continue;
    const LinkMove m = LinkMove::make(x1, kPi * u[1], s.v());
    const ServingIrsDistance fr(x1, s);
    const double r1 = fr.quantile(u[2]);
    const LinkMove mr = LinkMove::make(r1, kPi * u[3], s.v());
    const double p_ln = link_transition(mr, s).p_ln;
    x_sum += p_ln * (1.0 - irs_availability(m.x2, mr.x2, s));
  }
  const double xbar = x_sum / opt_.qmc_nodes;
  const double p_nn = 1.0 - p_rl;
  return {p_rl, p_nn * xbar, p_nn * (1.0 - xbar)};
}

std::array<double, 3> Transition::row(LosState k) const {
  if (!(as_->probs()[k] > 1e-12))
    throw Error(Errc::DegenerateState, std::string("initial state ") + los_name(k) + " has zero probability");
  if (k == LosState::RLoS) return row_reflected();
  return row_direct(k);
}

TransitionMatrix Transition::matrix() const {
  TransitionMatrix t;
  for (LosState k : {LosState::LoS, LosState::NLoS, LosState::RLoS}) {
    if (!(as_->probs()[k] > 1e-12)) continue;
    auto r = row(k);
    for (int j = 0; j < 3; ++j) t.p[static_cast<int>(k)][j] = r[j];
  }
  return t;
}

}  // namespace irsho
