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
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "core/error.hpp"

namespace irsho {

struct QuadSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  int max_depth = 40;
  double tail_cut_tol = 1e-9;
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evals = 0;
  bool converged = true;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

namespace quad_detail {

struct GK15 {
  std::array<double, 8> x;   // Kronrod abscissas, x[0] = 0
  std::array<double, 8> wk;  // Kronrod weights
  std::array<double, 4> wg;  // Gauss weights at x[0], x[2], x[4], x[6]
};
const GK15& gk15();

inline double mag(double v) { return std::fabs(v); }
template <size_t N>
double mag(const std::array<double, N>& v) {
  double m = 0;
  for (double e : v) m = std::max(m, std::fabs(e));
  return m;
}
inline bool finite(double v) { return std::isfinite(v); }
template <size_t N>
bool finite(const std::array<double, N>& v) {
  for (double e : v)
    if (!std::isfinite(e)) return false;
  return true;
}
inline void axpy(double& y, double a, double x) { y += a * x; }
template <size_t N>
void axpy(std::array<double, N>& y, double a, const std::array<double, N>& x) {
  for (size_t i = 0; i < N; ++i) y[i] += a * x[i];
}
inline double diffmag(double a, double b) { return std::fabs(a - b); }
template <size_t N>
double diffmag(const std::array<double, N>& a, const std::array<double, N>& b) {
  double m = 0;
  for (size_t i = 0; i < N; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

template <class T>
struct Piece {
  double a, b;
  T val;
  double err;
  int depth;
  bool operator<(const Piece& o) const { return err < o.err; }
};

template <class T, class F>
Piece<T> rule(F& f, double a, double b, int depth, int& evals) {
  const GK15& g = gk15();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T k{}, gs{};
  T f0 = f(c);
  if (!finite(f0)) throw Error(Errc::NonFiniteIntegrand, "non-finite integrand value");
  axpy(k, g.wk[0], f0);
  axpy(gs, g.wg[0], f0);
  for (int i = 1; i < 8; ++i) {
    T fl = f(c - h * g.x[i]);
    T fr = f(c + h * g.x[i]);
    if (!finite(fl) || !finite(fr)) throw Error(Errc::NonFiniteIntegrand, "non-finite integrand value");
    axpy(k, g.wk[i], fl);
    axpy(k, g.wk[i], fr);
    if (i % 2 == 0) {
      axpy(gs, g.wg[i / 2], fl);
      axpy(gs, g.wg[i / 2], fr);
    }
  }
  evals += 15;
  T kv{}, gv{};
  axpy(kv, h, k);
  axpy(gv, h, gs);
  return {a, b, kv, diffmag(kv, gv), depth};
}

// Global adaptive Gauss-Kronrod over [a,b] with interior breakpoints.
template <class T, class F>
T adapt(F& f, double a, double b, const QuadSpec& s, const std::vector<double>& breaks, QuadResult& info) {
  T total{};
  info = {};
  if (!(b > a)) return total;
  std::vector<double> edges{a};
  for (double x : breaks)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Piece<T>> heap;
  std::vector<Piece<T>> frozen;
  int evals = 0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) heap.push(rule<T>(f, edges[i], edges[i + 1], 0, evals));
  auto totals = [&](T& v, double& e) {
    v = T{};
    e = 0;
    auto h = heap;
    while (!h.empty()) {
      axpy(v, 1.0, h.top().val);
      e += h.top().err;
      h.pop();
    }
    for (auto& p : frozen) {
      axpy(v, 1.0, p.val);
      e += p.err;
    }
  };
  double err = 0;
  totals(total, err);
  int count = static_cast<int>(heap.size());
  bool ok = true;
  while (err > std::max(s.abs_tol, s.rel_tol * mag(total))) {
    if (heap.empty() || count >= s.max_intervals) {
      ok = false;
      break;
    }
    Piece<T> w = heap.top();
    heap.pop();
    if (w.depth >= s.max_depth) {
      frozen.push_back(w);
      continue;
    }
    const double m = 0.5 * (w.a + w.b);
    Piece<T> l = rule<T>(f, w.a, m, w.depth + 1, evals);
    Piece<T> r = rule<T>(f, m, w.b, w.depth + 1, evals);
    // incremental update keeps the loop linear in the number of splits
    T delta{};
    axpy(delta, 1.0, l.val);
    axpy(delta, 1.0, r.val);
    axpy(delta, -1.0, w.val);
    axpy(total, 1.0, delta);
    err += l.err + r.err - w.err;
    heap.push(l);
    heap.push(r);
    ++count;
    if (count % 64 == 0) totals(total, err);  // refresh against drift
  }
  totals(total, err);
  info.error = err;
  info.evals = evals;
  info.converged = ok || err <= std::max(s.abs_tol, s.rel_tol * mag(total));
  return total;
}

}  // namespace quad_detail

// Adaptive 1D integral; never throws on non-convergence, reports it instead.
QuadResult integrate_1d_result(const Fn1& f, double a, double b, const QuadSpec& spec = {},
                               const std::vector<double>& breaks = {});

// Adaptive 1D integral; throws NonConvergence / NonFiniteIntegrand.
double integrate_1d(const Fn1& f, double a, double b, const QuadSpec& spec = {},
                    const std::vector<double>& breaks = {});

// Vector-valued variant sharing one set of nodes across components.
template <size_t N, class F>
std::array<double, N> integrate_1d_vec(F&& f, double a, double b, const QuadSpec& spec = {},
                                       const std::vector<double>& breaks = {}) {
  QuadResult info;
  auto v = quad_detail::adapt<std::array<double, N>>(f, a, b, spec, breaks, info);
  if (!info.converged)
    throw Error(Errc::NonConvergence, "vector quadrature did not converge, err=" + std::to_string(info.error));
  return v;
}

// Truncates [a, inf) where |f(b)|*b < tail_cut_tol*|estimate|; `scale` is the
// first probe width (a characteristic length of f).
double integrate_semi_infinite(const Fn1& f, double a, const QuadSpec& spec = {}, double scale = 1.0,
                               const std::vector<double>& breaks = {}, double* cut = nullptr);

double integrate_2d_nested(const Fn2& f, double a, double b,
                           const std::function<std::pair<double, double>(double)>& inner,
                           const QuadSpec& spec = {});

struct ExpectationResult {
  double value = 0.0;
  double mass = 0.0;
  bool mass_warning = false;  // |mass - 1| > 1e-3
};

// E[g] under pdf on [a,b]; b = +inf selects the semi-infinite path.
ExpectationResult expectation(const Fn1& g, const Fn1& pdf, double a, double b, const QuadSpec& spec = {},
                              double scale = 1.0);

}  // namespace irsho
