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
#include "core/channel.hpp"

#include <cmath>

#include "core/error.hpp"

namespace irsho {

double rx_power_direct(LosState state, double d0, const Scenario& s) {
  if (!(d0 > 0)) throw Error(Errc::ZeroDistance, "rx_power_direct: distance must be > 0");
  if (state == LosState::LoS) return s.p_t() * s.k_l() * std::pow(d0, -s.alpha_l());
  if (state == LosState::NLoS) return s.p_t() * s.k_n() * std::pow(d0, -s.alpha_n());
  throw Error(Errc::InvalidArgument, "rx_power_direct: RLoS needs rx_power_reflected");
}

double beamforming_gain(int n, double m) {
  const double nn = static_cast<double>(n);
  const double ratio = std::exp(std::lgamma(m + 0.5) - std::lgamma(m));
  const double r4 = ratio * ratio * ratio * ratio;
  return nn * nn + nn * (1.0 - r4 / (m * m));
}

double rx_power_reflected(double r0, double d0p, const Scenario& s) {
  if (!(r0 > 0) || !(d0p > 0)) throw Error(Errc::ZeroDistance, "rx_power_reflected: distances must be > 0");
  return s.p_t() * s.k_l() * s.k_l() * s.g_bf() * std::pow(r0 * d0p, -s.alpha_l());
}

}  // namespace irsho
