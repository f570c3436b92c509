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
#include "core/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <sstream>

namespace irsho {

namespace quad_detail {

const GK15& gk15() {
  static const GK15 tab = [] {
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gl = boost::math::quadrature::gauss<double, 7>;
    GK15 t{};
    for (int i = 0; i < 8; ++i) {
      t.x[i] = gk::abscissa()[i];
      t.wk[i] = gk::weights()[i];
    }
    for (int i = 0; i < 4; ++i) t.wg[i] = gl::weights()[i];
    return t;
  }();
  return tab;
}

}  // namespace quad_detail

QuadResult integrate_1d_result(const Fn1& f, double a, double b, const QuadSpec& spec,
                               const std::vector<double>& breaks) {
  if (b < a) throw Error(Errc::InvalidArgument, "integrate_1d: a > b");
  QuadResult info;
  auto fn = [&](double x) { return f(x); };
  info.value = quad_detail::adapt<double>(fn, a, b, spec, breaks, info);
  return info;
}

double integrate_1d(const Fn1& f, double a, double b, const QuadSpec& spec, const std::vector<double>& breaks) {
  QuadResult r = integrate_1d_result(f, a, b, spec, breaks);
  if (!r.converged) {
    std::ostringstream os;
    os << "integrate_1d on [" << a << "," << b << "] did not converge: value=" << r.value << " err=" << r.error;
    throw Error(Errc::NonConvergence, os.str());
  }
  return r.value;
}

double integrate_semi_infinite(const Fn1& f, double a, const QuadSpec& spec, double scale,
                               const std::vector<double>& breaks, double* cut) {
  if (!(scale > 0)) throw Error(Errc::InvalidArgument, "integrate_semi_infinite: scale must be > 0");
  double lo = a, total = 0.0, width = scale;
  double prev_g = -1.0;
  int rising = 0;
  for (int k = 0; k < 200; ++k) {
    double hi = a + width;
    std::vector<double> br;
    for (double x : breaks)
      if (x > lo && x < hi) br.push_back(x);
    QuadSpec ps = spec;
    ps.abs_tol = std::max(spec.abs_tol * 0.5, spec.rel_tol * std::fabs(total) * 0.5);
    total += integrate_1d(f, lo, hi, ps, br);
    double g = std::fabs(f(hi)) * std::max(std::fabs(hi), 1e-300);
    if (!std::isfinite(g)) throw Error(Errc::NonFiniteIntegrand, "non-finite tail probe");
    if (g <= spec.tail_cut_tol * std::fabs(total) || (total == 0.0 && g == 0.0 && k > 4)) {
      if (cut) *cut = hi;
      log_line("semi-infinite truncation at " + std::to_string(hi));
      return total;
    }
    if (prev_g >= 0 && g > prev_g) {
      if (++rising >= 3) throw Error(Errc::TailNotDecaying, "integrand tail is not decaying");
    } else {
      rising = 0;
    }
    prev_g = g;
    lo = hi;
    width *= 2.0;
  }
  throw Error(Errc::TailNotDecaying, "tail cut not reached");
}

double integrate_2d_nested(const Fn2& f, double a, double b,
                           const std::function<std::pair<double, double>(double)>& inner, const QuadSpec& spec) {
  QuadSpec in = spec;
  in.rel_tol = spec.rel_tol * 0.1;
  in.abs_tol = spec.abs_tol * 0.1;
  return integrate_1d(
      [&](double x) {
        auto [c, d] = inner(x);
        if (!(d > c)) return 0.0;
        return integrate_1d([&](double y) { return f(x, y); }, c, d, in);
      },
      a, b, spec);
}

ExpectationResult expectation(const Fn1& g, const Fn1& pdf, double a, double b, const QuadSpec& spec, double scale) {
  ExpectationResult r;
  auto gp = [&](double x) {
    double p = pdf(x);
    if (p < 0) throw Error(Errc::InvalidArgument, "expectation: negative pdf value");
    return g(x) * p;
  };
  if (std::isinf(b)) {
    r.mass = integrate_semi_infinite(pdf, a, spec, scale);
    r.value = integrate_semi_infinite(gp, a, spec, scale);
  } else {
    r.mass = integrate_1d(pdf, a, b, spec);
    r.value = integrate_1d(gp, a, b, spec);
  }
  double dev = std::fabs(r.mass - 1.0);
  if (dev > 1e-2) throw Error(Errc::UnnormalizedDensity, "pdf mass " + std::to_string(r.mass));
  if (dev > 1e-3) {
    r.mass_warning = true;
    log_line("expectation: pdf mass deviates from 1 by " + std::to_string(dev));
  }
  return r;
}

}  // namespace irsho
