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
#include <functional>
#include <vector>

#include "core/quadrature.hpp"
#include "core/scenario.hpp"
#include "core/spatial.hpp"

namespace irsho {

struct AssociationProbs {
  double a_los = 0, a_nlos = 0, a_rlos = 0;
  double operator[](LosState k) const {
    return k == LosState::LoS ? a_los : (k == LosState::NLoS ? a_nlos : a_rlos);
  }
  double sum() const { return a_los + a_nlos + a_rlos; }
};

// Power-equivalent radii between LoS, NLoS and reflected links.
struct EquivalentRadii {
  explicit EquivalentRadii(const Scenario& s);
  double d_tilde_n(double d_l) const;  // NLoS distance matching LoS power at d_l
  double d_tilde_l(double d_n) const;  // LoS distance matching NLoS power at d_n
  double r_tilde_l(double d_l, double d_r) const;
  double r_tilde_n(double d_n, double d_r) const;
  double c_l, c_n;  // (K_L G)^{1/aL}, (K_L^2 G / K_N)^{1/aL}
  double al, an;
  double kl, kn;
};

// Running integral of lambda_k(x) x from 0, tabulated on a uniform grid.
class CumulativeDensity {
 public:
  CumulativeDensity() = default;
  CumulativeDensity(std::function<double(double)> integrand, double x_max, int cells);
  double operator()(double y) const;

 private:
  std::function<double(double)> f_;
  double h_ = 1.0;
  std::vector<double> c_;
};

class Association {
 public:
  explicit Association(const Scenario& s, const QuadSpec& spec = default_spec());
  static QuadSpec default_spec();

  const Scenario& scenario() const { return s_; }
  const EquivalentRadii& radii() const { return eq_; }
  AssociationProbs probs() const { return a_; }

  // 2 pi int_0^y lambda_k(x) x dx
  double lambda_cum(LosState k, double y) const;
  double nearest_distance_pdf(LosState k, double d) const;
  // Probability that a Palm BS of state k at distance y wins association.
  double xi(LosState k, double y) const;
  // Mean number of reflected BSs whose product r*x is below z.
  double reflected_count(double z) const;

  // serving-distance distribution of Theorem 2
  double serving_pdf(LosState k, double x) const;
  double serving_cdf(LosState k, double x) const;
  double serving_quantile(LosState k, double u) const;
  double support_max(LosState k) const { return cut_[idx(k)]; }

 private:
  static int idx(LosState k) { return static_cast<int>(k); }
  double outer_integrand(LosState k, double y) const;
  void build_table(LosState k);

  Scenario s_;
  QuadSpec spec_;
  EquivalentRadii eq_;
  CumulativeDensity cum_n_, cum_r_;
  AssociationProbs a_;
  std::array<double, 3> cut_{};
  std::array<double, 3> table_mass_{};
  std::array<std::vector<double>, 3> grid_x_, grid_cdf_, grid_pdf_;
};

}  // namespace irsho
