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

#include <array>
#include <cstdint>

#include "core/association.hpp"
#include "core/scenario.hpp"

namespace irsho {

// User moves from (0,0) to (v,0); the BS sits at distance x1, angle phi1.
struct LinkMove {
  double x1 = 0, phi1 = 0, x2 = 0, phi2 = 0, v = 0;
  double sin_dphi = 0, sin_phi2 = 0;  // sin(phi2 - phi1), sin(phi2)
  static LinkMove make(double x1, double phi1, double v);
};

// Area of midpoints whose blockage (orientation beta, length l) crosses both
// the pre-move and post-move links.
double overlap_area(double beta, const LinkMove& m, double l);
// Area of midpoints whose blockage crosses both the movement path and the
// post-move link.
double escape_area(double beta, const LinkMove& m, double l);

struct LinkTransition {
  double p_ll = 1, p_ln = 0, p_nl = 0, p_nn = 1;
};

// Expected areas E_{l,beta}[.] used by the link probabilities.
struct LinkAreas {
  double s1 = 0, s2 = 0, overlap = 0, escape = 0;
};
LinkAreas link_areas(const LinkMove& m, const Scenario& s);
LinkTransition link_transition(const LinkMove& m, const Scenario& s);
inline LinkTransition link_transition(double x1, double phi1, const Scenario& s) {
  return link_transition(LinkMove::make(x1, phi1, s.v()), s);
}

struct TransitionMatrix {
  double p[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double row_sum(LosState k) const;
  double operator()(LosState k, LosState j) const { return p[static_cast<int>(k)][static_cast<int>(j)]; }
};

struct TransitionOptions {
  int phi_nodes = 64;       // periodic rule on [-pi, pi)
  int qmc_nodes = 4096;     // reflected-link expectation
  std::uint64_t seed = 1;
};

class Transition {
 public:
  Transition(const Association& assoc, const TransitionOptions& opt = {});
  std::array<double, 3> row(LosState k) const;
  TransitionMatrix matrix() const;

 private:
  std::array<double, 3> row_direct(LosState k) const;
  std::array<double, 3> row_reflected() const;
  const Association* as_;
  TransitionOptions opt_;
};

}  // namespace irsho
