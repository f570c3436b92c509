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
#include "core/handover.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/lowdisc.hpp"
#include "core/spatial.hpp"

namespace irsho {

namespace {
constexpr double kPi = M_PI;
constexpr LosState kStates[3] = {LosState::LoS, LosState::NLoS, LosState::RLoS};
constexpr LosState kTargets[2] = {LosState::LoS, LosState::NLoS};
}  // namespace

double equivalent_distance(LosState k, LosState w, double x, std::optional<double> r, const Scenario& s) {
  if (!(x > 0)) throw Error(Errc::InvalidArgument, "equivalent_distance: x must be > 0");
  if (w == LosState::RLoS) throw Error(Errc::InvalidArgument, "equivalent_distance: target must be L or N");
  const double al = s.alpha_l(), an = s.alpha_n(), kl = s.k_l(), kn = s.k_n();
  switch (k) {
    case LosState::LoS:
      return w == LosState::LoS ? x : std::pow(kn / kl, 1.0 / an) * std::pow(x, al / an);
    case LosState::NLoS:
      return w == LosState::NLoS ? x : std::pow(kl / kn, 1.0 / al) * std::pow(x, an / al);
    case LosState::RLoS: {
      if (!r) throw Error(Errc::MissingIrsDistance, "equivalent_distance: RLoS needs the IRS distance");
      const double rx = *r * x;
      if (w == LosState::LoS) return std::pow(1.0 / (kl * s.g_bf()), 1.0 / al) * rx;
      return std::pow(kn / (kl * kl * s.g_bf()), 1.0 / an) * std::pow(rx, al / an);
    }
  }
  return x;
}

double omega(LosState w, double x1e, double x2e, const Scenario& s) {
  const double v = s.v();
  const double lo = std::max(0.0, x1e - v);
  if (!(x2e > lo)) return 0.0;
  auto f = [&](double x) {
    if (x <= 0) return 0.0;
    double th;
    if (x <= v - x1e) th = kPi;
    else th = std::acos(std::clamp((x1e * x1e - v * v - x * x) / (2.0 * v * x), -1.0, 1.0));
    return 2.0 * th * bs_density(w, x, s) * x;
  };
  std::vector<double> br;
  if (v > x1e) br.push_back(v - x1e);
  br.push_back(x1e + v);  // theta reaches pi beyond the far edge of the exclusion disk
  QuadSpec q;
  q.rel_tol = 1e-7;
  q.abs_tol = 1e-12;
  return -integrate_1d(f, lo, x2e, q, br);
}

Handover::Handover(const Association& assoc, const HandoverOptions& opt) : as_(&assoc), opt_(opt) {}

double Handover::no_ho_prob(LosState k, LosState j, LosState w, double x1, double phi1) const {
  const Scenario& s = as_->scenario();
  const LinkMove m = LinkMove::make(x1, phi1, s.v());
  const int n = std::max(1, opt_.r_nodes);
  auto eh = [&](double r1, double r2) {
    const double a = equivalent_distance(k, w, x1, r1, s);
    const double b = equivalent_distance(j, w, m.x2, r2, s);
    return std::exp(omega(w, a, b, s));
  };
  const bool kr = k == LosState::RLoS, jr = j == LosState::RLoS;
  if (!kr && !jr) return eh(0.0, 0.0);
  if (s.lambda_i() <= 0) return 1.0;
  double acc = 0.0;
  if (!kr && jr) {
    const ServingIrsDistance fr(m.x2, s);
    for (int i = 0; i < n; ++i) acc += eh(0.0, fr.quantile((i + 0.5) / n));
    return acc / n;
  }
  const ServingIrsDistance fr(x1, s);
  if (kr && !jr) {
    for (int i = 0; i < n; ++i) {
      const double r1 = fr.quantile((i + 0.5) / n);
      acc += eh(r1, 0.0);
    }
    return acc / n;
  }
  for (int i = 0; i < n; ++i) {
    const double r1 = fr.quantile((i + 0.5) / n);
    for (int q = 0; q < n; ++q) {
      const double ph = (q + 0.5) * kPi / n;
      const double r2 = std::sqrt(std::max(0.0, r1 * r1 + s.v() * s.v() - 2.0 * r1 * s.v() * std::cos(ph)));
      acc += eh(r1, std::max(r2, 1e-9));
    }
  }
  return acc / (static_cast<double>(n) * n);
}

void Handover::accumulate(int n, HoResult& out) const {
  const Scenario& s = as_->scenario();
  const auto pts = shifted_sobol(static_cast<size_t>(n), 5, opt_.seed);
  const bool irs = s.lambda_i() > 0;
  for (LosState k : kStates) {
    const int ki = static_cast<int>(k);
    for (auto& row : out.eh[ki])
      for (double& e : row) e = 0.0;
    if (!(out.assoc[k] > 1e-12)) continue;
    double sum[3][2] = {};
    for (int i = 0; i < n; ++i) {
      const double* u = &pts[static_cast<size_t>(i) * 5];
      const double x1 = std::max(as_->serving_quantile(k, u[0]), 1e-9);
      const LinkMove m = LinkMove::make(x1, kPi * u[1], s.v());
      double r1 = 0.0, r2_same = 0.0, r2_new = 0.0;
      if (k == LosState::RLoS) {
        r1 = ServingIrsDistance(x1, s).quantile(u[2]);
        const double ph = kPi * u[3];
        r2_same = std::sqrt(std::max(0.0, r1 * r1 + s.v() * s.v() - 2.0 * r1 * s.v() * std::cos(ph)));
        r2_same = std::max(r2_same, 1e-9);
      } else if (irs && irs_availability(m.x2, 0.0, s) > 1e-12) {
        r2_new = ServingIrsDistance(m.x2, s).quantile(u[4]);
      }
      for (int wi = 0; wi < 2; ++wi) {
        const LosState w = kTargets[wi];
        const double a = equivalent_distance(k, w, x1, r1, s);
        for (LosState j : kStates) {
          const int jiv = static_cast<int>(j);
          if (j == LosState::RLoS && (!irs || (k != LosState::RLoS && r2_new <= 0.0))) {
            sum[jiv][wi] += 1.0;
            continue;
          }
          const double r2 = k == LosState::RLoS ? r2_same : r2_new;
          const double b = equivalent_distance(j, w, m.x2, r2, s);
          sum[jiv][wi] += std::exp(omega(w, a, b, s));
        }
      }
    }
    for (int j = 0; j < 3; ++j)
      for (int w = 0; w < 2; ++w) out.eh[ki][j][w] = sum[j][w] / n;
  }
  out.h = 0.0;
  for (LosState k : kStates) {
    const int ki = static_cast<int>(k);
    out.h_k[ki] = 0.0;
    if (!(out.assoc[k] > 1e-12)) continue;
    for (int j = 0; j < 3; ++j) out.h_k[ki] += out.trans.p[ki][j] * (1.0 - out.eh[ki][j][0] * out.eh[ki][j][1]);
    out.h += out.assoc[k] * out.h_k[ki];
  }
  out.qmc_nodes = n;
}

HoResult Handover::evaluate() const {
  HoResult out;
  out.assoc = as_->probs();
  TransitionOptions topt = opt_.transition;
  out.trans = Transition(*as_, topt).matrix();
  int n = std::max(16, opt_.qmc_nodes);
  accumulate(n, out);
  while (n * 2 <= opt_.max_qmc_nodes) {
    HoResult next = out;
    accumulate(n * 2, next);
    next.last_change = std::fabs(next.h - out.h);
    out = next;
    n *= 2;
    if (out.last_change < opt_.doubling_tol) break;
  }
  out.h = std::clamp(out.h, 0.0, 1.0);
  return out;
}

HoResult ho_probability(const Scenario& s, const HandoverOptions& opt) {
  Association a(s);
  return Handover(a, opt).evaluate();
}

}  // namespace irsho
