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

#include <string>
#include <vector>

namespace irsho {

enum class LosState { LoS = 0, NLoS = 1, RLoS = 2 };

const char* los_name(LosState s);

struct LengthDist {
  enum class Kind { Constant, Uniform };
  Kind kind = Kind::Constant;
  double l_min = 10.0;  // m; equals l_max for Constant
  double l_max = 10.0;

  static LengthDist constant(double l) { return {Kind::Constant, l, l}; }
  static LengthDist uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
};

struct LengthMoments {
  double e_l = 0.0;   // m
  double e_l2 = 0.0;  // m^2
};

LengthMoments length_moments(const LengthDist& dist);

enum class IrsMode { AnalysisConsistent, ExactGeometry };

// Internal units: meters, per-m^2, watts. Path-loss constants are stored as
// configured (referenced to pathloss_ref_m) and rescaled in Scenario.
struct ScenarioParams {
  double lambda_b = 10e-6;
  double lambda_o = 500e-6;
  double mu = 0.5;
  LengthDist length = LengthDist::constant(10.0);
  double p_t = 0.251188643150958;  // 24 dBm
  double k_los = 4.168693834703355e-11;   // 10^-10.38
  double k_nlos = 2.884031503126606e-15;  // 10^-14.54
  double alpha_los = 2.09;
  double alpha_nlos = 3.75;
  double m_los = 10.0;
  double m_nlos = 1.0;
  int n_elements = 500;
  double d_serve = 50.0;
  double v = 20.0;
  double pathloss_ref_m = 1000.0;

  // engine options carried with the scenario
  IrsMode irs_mode = IrsMode::AnalysisConsistent;
  bool ho_include_rlos_candidates = false;
  // MC only: candidates keep the LoS state they had before the move.
  bool ho_frozen_candidate_states = false;
};

// Validated, immutable scenario with derived quantities.
class Scenario {
 public:
  static Scenario validate(const ScenarioParams& p);
  // Lists violated constraints without throwing; empty when valid.
  static std::vector<std::string> violations(const ScenarioParams& p);

  const ScenarioParams& params() const { return p_; }
  double lambda_b() const { return p_.lambda_b; }
  double lambda_o() const { return p_.lambda_o; }
  double lambda_i() const { return lambda_i_; }
  double mu() const { return p_.mu; }
  double d_serve() const { return p_.d_serve; }
  double v() const { return p_.v; }
  double alpha_l() const { return p_.alpha_los; }
  double alpha_n() const { return p_.alpha_nlos; }
  double p_t() const { return p_.p_t; }
  const LengthMoments& moments() const { return mom_; }
  double e_l() const { return mom_.e_l; }
  double e_l2() const { return mom_.e_l2; }
  double l_max() const { return p_.length.l_max; }
  // K constants rescaled to a 1 m reference distance.
  double k_l() const { return k_l_; }
  double k_n() const { return k_n_; }
  double g_bf() const { return g_bf_; }
  // LoS decay rate 2*lambda_o*E[l]/pi, per m.
  double c_los() const { return c_; }

 private:
  explicit Scenario(const ScenarioParams& p);
  ScenarioParams p_;
  LengthMoments mom_;
  double lambda_i_ = 0, k_l_ = 0, k_n_ = 0, g_bf_ = 0, c_ = 0;
};

// Unit conversions at the configuration boundary.
inline double per_km2_to_per_m2(double x) { return x * 1e-6; }
inline double per_m2_to_per_km2(double x) { return x * 1e6; }
double dbm_to_watt(double dbm);
double watt_to_dbm(double w);

}  // namespace irsho
