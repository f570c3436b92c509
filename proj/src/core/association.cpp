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
#include "core/association.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace irsho {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kTableCells = 256;

// single 15-point Kronrod rule, used inside already-small cells
double gk_rule(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  const auto& g = quad_detail::gk15();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = g.wk[0] * f(c);
  for (int i = 1; i < 8; ++i) s += g.wk[i] * (f(c - h * g.x[i]) + f(c + h * g.x[i]));
  return s * h;
}
}  // namespace

EquivalentRadii::EquivalentRadii(const Scenario& s)
    : al(s.alpha_l()), an(s.alpha_n()), kl(s.k_l()), kn(s.k_n()) {
  c_l = std::pow(kl * s.g_bf(), 1.0 / al);
  c_n = std::pow(kl * kl * s.g_bf() / kn, 1.0 / al);
}

double EquivalentRadii::d_tilde_n(double d_l) const { return std::pow(kn / kl, 1.0 / an) * std::pow(d_l, al / an); }
double EquivalentRadii::d_tilde_l(double d_n) const { return std::pow(kl / kn, 1.0 / al) * std::pow(d_n, an / al); }
double EquivalentRadii::r_tilde_l(double d_l, double d_r) const { return c_l * d_l / d_r; }
double EquivalentRadii::r_tilde_n(double d_n, double d_r) const { return c_n * std::pow(d_n, an / al) / d_r; }

CumulativeDensity::CumulativeDensity(std::function<double(double)> integrand, double x_max, int cells)
    : f_(std::move(integrand)), h_(x_max / cells), c_(cells + 1, 0.0) {
  for (int i = 0; i < cells; ++i) c_[i + 1] = c_[i] + gk_rule(f_, i * h_, (i + 1) * h_);
}

double CumulativeDensity::operator()(double y) const {
  if (y <= 0.0) return 0.0;
  const int last = static_cast<int>(c_.size()) - 1;
  int i = std::min(static_cast<int>(y / h_), last);
  const double x0 = i * h_;
  if (y - x0 <= h_) return c_[i] + gk_rule(f_, x0, y);
  // beyond the table: extend with an adaptive piece
  QuadSpec q;
  q.rel_tol = 1e-9;
  q.abs_tol = 1e-14;
  return c_[last] + integrate_1d(f_, x0, y, q);
}

QuadSpec Association::default_spec() {
  QuadSpec q;
  q.rel_tol = 1e-7;
  q.abs_tol = 1e-12;
  return q;
}

Association::Association(const Scenario& s, const QuadSpec& spec) : s_(s), spec_(spec), eq_(s) {
  const double scale = 1.0 / std::sqrt(s.lambda_b());
  const double xmax = std::max(2000.0, 12.0 * scale);
  cum_n_ = CumulativeDensity([this](double x) { return bs_density(LosState::NLoS, x, s_) * x; }, xmax, 4096);
  if (s.lambda_i() > 0)
    cum_r_ = CumulativeDensity([this](double x) { return bs_density(LosState::RLoS, x, s_) * x; }, xmax, 4096);
  for (LosState k : {LosState::LoS, LosState::NLoS, LosState::RLoS}) {
    double val = 0.0, cut = 0.0;
    if (!(k == LosState::RLoS && s.lambda_i() <= 0.0)) {
      val = integrate_semi_infinite([&](double y) { return outer_integrand(k, y); }, 0.0, spec_, 0.5 * scale, {},
                                    &cut);
    }
    if (k == LosState::LoS) a_.a_los = val;
    else if (k == LosState::NLoS) a_.a_nlos = val;
    else a_.a_rlos = val;
    cut_[idx(k)] = cut;
    if (val > 1e-12) build_table(k);
  }
}

double Association::lambda_cum(LosState k, double y) const {
  if (y <= 0.0) return 0.0;
  if (k == LosState::LoS) {
    const double c = s_.c_los();
    double v;
    if (c * y < 1e-4) v = 0.5 * y * y * (1.0 - 2.0 * c * y / 3.0);
    else v = (1.0 - std::exp(-c * y) * (1.0 + c * y)) / (c * c);
    return kTwoPi * s_.lambda_b() * v;
  }
  if (k == LosState::NLoS) return kTwoPi * cum_n_(y);
  if (s_.lambda_i() <= 0.0) return 0.0;
  return kTwoPi * cum_r_(y);
}

double Association::nearest_distance_pdf(LosState k, double d) const {
  if (k == LosState::RLoS && s_.lambda_i() <= 0.0)
    throw Error(Errc::DegenerateState, "RLoS process is empty when lambda_i = 0");
  if (d <= 0.0) return 0.0;
  return kTwoPi * bs_density(k, d, s_) * d * std::exp(-lambda_cum(k, d));
}

double Association::xi(LosState k, double y) const {
  const Scenario& s = s_;
  const double el = s.e_l(), dd = s.d_serve();
  const bool irs = s.lambda_i() > 0 && dd > el;
  double expo = 0.0;
  if (k == LosState::LoS || k == LosState::NLoS) {
    // C y^p / x is the equivalent IRS radius r~ for a reflected BS at x
    const double p = (k == LosState::LoS) ? 1.0 : eq_.an / eq_.al;
    const double cc = (k == LosState::LoS) ? eq_.c_l : eq_.c_n;
    const double num = cc * std::pow(y, p);
    if (k == LosState::LoS) expo = lambda_cum(LosState::LoS, y) + lambda_cum(LosState::NLoS, eq_.d_tilde_n(y));
    else expo = lambda_cum(LosState::NLoS, y) + lambda_cum(LosState::LoS, eq_.d_tilde_l(y));
    if (irs) expo += reflected_count(num);
  } else {
    // The serving IRS distance r1 is shared by every competitor comparison, so
    // the expectation over r1 stays outside the exponential.
    if (!irs || !(irs_availability(y, 0.0, s) > 1e-12)) return 0.0;
    const ServingIrsDistance fr(y, s);
    const double inv = eq_.al / eq_.an;
    auto cond = [&](double r) {
      const double z = r * y;
      const double e = lambda_cum(LosState::LoS, z / eq_.c_l) +
                       lambda_cum(LosState::NLoS, std::pow(z / eq_.c_n, inv)) + reflected_count(z);
      return fr.pdf(r) * std::exp(-e);
    };
    QuadSpec qr = spec_;
    qr.abs_tol = 1e-14;
    return integrate_1d(cond, el, dd, qr);
  }
  return std::exp(-expo);
}

double Association::reflected_count(double z) const {
  const double el = s_.e_l(), dd = s_.d_serve();
  if (s_.lambda_i() <= 0.0 || !(dd > el) || z <= 0.0) return 0.0;
  QuadSpec q = spec_;
  q.rel_tol = spec_.rel_tol * 0.1;
  q.abs_tol = 1e-16;
  const double part = integrate_1d(
      [&](double x) { return bs_density(LosState::RLoS, x, s_) * fr1_cdf(z / x, x, s_) * x; }, z / dd, z / el, q);
  return lambda_cum(LosState::RLoS, z / dd) + kTwoPi * part;
}

double Association::outer_integrand(LosState k, double y) const {
  if (y <= 0.0) return 0.0;
  const double lam = bs_density(k, y, s_);
  if (lam <= 0.0) return 0.0;
  return kTwoPi * lam * y * xi(k, y);
}

void Association::build_table(LosState k) {
  const int i = idx(k);
  const double cut = cut_[i];
  auto& xs = grid_x_[i];
  auto& cs = grid_cdf_[i];
  xs.resize(kTableCells + 1);
  cs.assign(kTableCells + 1, 0.0);
  const double h = cut / kTableCells;
  auto f = [&](double y) { return outer_integrand(k, y); };
  for (int j = 0; j <= kTableCells; ++j) xs[j] = j * h;
  for (int j = 0; j < kTableCells; ++j) cs[j + 1] = cs[j] + gk_rule(f, xs[j], xs[j + 1]);
  const double tot = cs.back();
  table_mass_[i] = tot;
  for (double& c : cs) c /= tot;
  auto& ps = grid_pdf_[i];
  ps.resize(kTableCells + 1);
  for (int j = 0; j <= kTableCells; ++j) ps[j] = f(xs[j]) / tot;
}

double Association::serving_pdf(LosState k, double x) const {
  const double a = a_[k];
  if (!(a > 1e-12)) throw Error(Errc::DegenerateState, std::string("association probability of state ") +
                                                          los_name(k) + " is zero");
  return outer_integrand(k, x) / a;
}

double Association::serving_cdf(LosState k, double x) const {
  const double a = a_[k];
  if (!(a > 1e-12)) throw Error(Errc::DegenerateState, "serving_cdf: state has zero association probability");
  const auto& xs = grid_x_[idx(k)];
  const auto& cs = grid_cdf_[idx(k)];
  if (x <= 0.0) return 0.0;
  if (x >= xs.back()) return 1.0;
  const double h = xs[1];
  int j = static_cast<int>(x / h);
  // exact within the cell, then normalized by the tabulated total
  double part = gk_rule([&](double y) { return outer_integrand(k, y); }, xs[j], x);
  return std::min(1.0, cs[j] + part / table_mass_[idx(k)]);
}

double Association::serving_quantile(LosState k, double u) const {
  const double a = a_[k];
  if (!(a > 1e-12)) throw Error(Errc::DegenerateState, "serving_quantile: state has zero association probability");
  const auto& xs = grid_x_[idx(k)];
  const auto& cs = grid_cdf_[idx(k)];
  u = std::clamp(u, 0.0, 1.0);
  auto it = std::upper_bound(cs.begin(), cs.end(), u);
  if (it == cs.begin()) return xs.front();
  if (it == cs.end()) return xs.back();
  const size_t j = static_cast<size_t>(it - cs.begin()) - 1;
  const auto& ps = grid_pdf_[idx(k)];
  const double h = xs[j + 1] - xs[j], c0 = cs[j], c1 = cs[j + 1];
  const double m0 = ps[j] * h, m1 = ps[j + 1] * h;
  // invert the cubic Hermite interpolant of the cdf on this cell
  auto cdf = [&](double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * c0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * c1 + (t3 - t2) * m1;
  };
  auto dcdf = [&](double t) {
    const double t2 = t * t;
    return (6 * t2 - 6 * t) * (c0 - c1) + (3 * t2 - 4 * t + 1) * m0 + (3 * t2 - 2 * t) * m1;
  };
  const double dc = c1 - c0;
  double lo = 0.0, hi = 1.0, t = dc > 0 ? (u - c0) / dc : 0.5;
  for (int it2 = 0; it2 < 40; ++it2) {
    const double e = cdf(t) - u;
    if (e > 0) hi = t;
    else lo = t;
    if (std::fabs(e) < 1e-14) break;
    const double d = dcdf(t);
    double nt = d > 0 ? t - e / d : 0.5 * (lo + hi);
    if (!(nt > lo && nt < hi)) nt = 0.5 * (lo + hi);
    t = nt;
  }
  return xs[j] + t * h;
}

}  // namespace irsho
