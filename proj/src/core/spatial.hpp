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

#include "core/quadrature.hpp"
#include "core/scenario.hpp"

namespace irsho {

enum class Mode { Exact, Approx };

double p_los(double d, const Scenario& s);

struct IrsGeometry {
  double r = 0;      // user-IRS distance
  double theta = 0;  // IRS angle relative to the user-BS line
  double d = 0;      // user-BS distance
};

struct IrsAngles {
  double theta1, theta2, theta3, d_prime;
};
IrsAngles irs_angles(const IrsGeometry& g);

// (1/2) + ((pi - t)/2) cot t with t clamped away from 0 and pi.
double overlap_shape(double theta);

double p_irs_exact(const IrsGeometry& g, const Scenario& s);
double p_irs_hat(double r_s, double r_e, double d, const Scenario& s);
double p_irs_hat_prime(double r0, double d, const Scenario& s);

// Integral of p_i * r over the annulus [r_s, r_e] x [-pi, pi].
double irs_mass(double r_s, double r_e, double d, const Scenario& s, Mode mode);

double bs_density(LosState state, double d, const Scenario& s, Mode mode = Mode::Approx);

// P_i(d, r) = 1 - exp(-lambda_i * mass(r, D, d))
double irs_availability(double d, double r, const Scenario& s, Mode mode = Mode::Approx);

// Closed-form (approx mode) serving-IRS distance cdf; callers must ensure
// the RLoS condition is possible at d.
double fr1_cdf(double r, double d, const Scenario& s);

class ServingIrsDistance {
 public:
  ServingIrsDistance(double d, const Scenario& s, Mode mode = Mode::Approx);
  double cdf(double r) const;
  double pdf(double r) const;
  double quantile(double u) const;
  double availability() const { return den_; }

 private:
  double mass_to(double r) const;
  double d_;
  const Scenario* s_;
  Mode mode_;
  double den_;
};

}  // namespace irsho
