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
#include "core/scenario.hpp"

#include <cmath>
#include <sstream>

#include "core/channel.hpp"
#include "core/error.hpp"

namespace irsho {

const char* los_name(LosState s) {
  switch (s) {
    case LosState::LoS: return "L";
    case LosState::NLoS: return "N";
    case LosState::RLoS: return "R";
  }
  return "?";
}

LengthMoments length_moments(const LengthDist& d) {
  if (d.kind == LengthDist::Kind::Constant) return {d.l_max, d.l_max * d.l_max};
  const double a = d.l_min, b = d.l_max;
  return {0.5 * (a + b), (a * a + a * b + b * b) / 3.0};
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

std::vector<std::string> Scenario::violations(const ScenarioParams& p) {
  std::vector<std::string> out;
  auto bad = [&](bool cond, const char* what) {
    if (cond) out.emplace_back(what);
  };
  bad(!(p.lambda_b > 0), "NegativeDensity: lambda_b must be > 0");
  bad(!(p.lambda_o >= 0), "NegativeDensity: lambda_o must be >= 0");
  bad(!(p.mu >= 0 && p.mu <= 1), "MuOutOfRange: mu must be in [0,1]");
  bad(!(p.length.l_max > 0), "DegenerateLength: l_max must be > 0");
  bad(!(p.length.l_min >= 0 && p.length.l_min <= p.length.l_max),
      "DegenerateLength: need 0 <= l_min <= l_max");
  bad(!(p.p_t > 0), "p_t must be > 0");
  bad(!(p.k_los > 0 && p.k_nlos > 0), "k_los and k_nlos must be > 0");
  bad(!(p.alpha_los >= 2), "alpha_los must be >= 2");
  bad(!(p.alpha_nlos > 0), "alpha_nlos must be > 0");
  bad(!(p.m_los > 0 && p.m_nlos > 0), "Nakagami shapes must be > 0");
  bad(p.n_elements < 1, "n_elements must be >= 1");
  bad(!(p.d_serve > 0), "d_serve must be > 0");
  bad(!(p.v >= 0), "v must be >= 0");
  bad(!(p.pathloss_ref_m > 0), "pathloss_ref_distance_m must be > 0");
  return out;
}

Scenario Scenario::validate(const ScenarioParams& p) {
  auto errs = violations(p);
  if (!errs.empty()) {
    Errc code = Errc::InvalidArgument;
    const std::string& first = errs.front();
    if (first.rfind("NegativeDensity", 0) == 0) code = Errc::NegativeDensity;
    else if (first.rfind("MuOutOfRange", 0) == 0) code = Errc::MuOutOfRange;
    else if (first.rfind("DegenerateLength", 0) == 0) code = Errc::DegenerateLength;
    std::ostringstream os;
    for (size_t i = 0; i < errs.size(); ++i) os << (i ? "; " : "") << errs[i];
    throw Error(code, os.str());
  }
  return Scenario(p);
}

Scenario::Scenario(const ScenarioParams& p) : p_(p) {
  if (p_.length.kind == LengthDist::Kind::Constant) p_.length.l_min = p_.length.l_max;
  mom_ = length_moments(p_.length);
  lambda_i_ = p_.mu * p_.lambda_o;
  k_l_ = p_.k_los * std::pow(p_.pathloss_ref_m, p_.alpha_los);
  k_n_ = p_.k_nlos * std::pow(p_.pathloss_ref_m, p_.alpha_nlos);
  g_bf_ = beamforming_gain(p_.n_elements, p_.m_los);
  c_ = 2.0 * p_.lambda_o * mom_.e_l / M_PI;
}

}  // namespace irsho
