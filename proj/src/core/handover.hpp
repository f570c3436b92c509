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
#include <optional>

#include "core/association.hpp"
#include "core/transition.hpp"

namespace irsho {

// Distance at which a `target`-state BS matches the power of a serving link
// in state `serving` at distance x (and IRS distance r for RLoS).
double equivalent_distance(LosState serving, LosState target, double x, std::optional<double> r, const Scenario& s);

// Negative mean count of target-state BSs in the HO lune.
double omega(LosState w, double x1_eq, double x2_eq, const Scenario& s);

struct HandoverOptions {
  int qmc_nodes = 4096;
  int max_qmc_nodes = 16384;
  double doubling_tol = 5e-4;
  int r_nodes = 16;  // midpoint rule for no_ho_prob's r expectations
  std::uint64_t seed = 1;
  TransitionOptions transition;
};

struct HoResult {
  double h = 0.0;
  AssociationProbs assoc;
  TransitionMatrix trans;
  // eh[k][j][w] = E[no-HO | k, j, w], w in {L, N}
  double eh[3][3][2] = {};
  double h_k[3] = {};
  int qmc_nodes = 0;
  double last_change = 0.0;
};

class Handover {
 public:
  Handover(const Association& assoc, const HandoverOptions& opt = {});
  // E over IRS distances of exp(Omega) for fixed (x1, phi1).
  double no_ho_prob(LosState k, LosState j, LosState w, double x1, double phi1) const;
  HoResult evaluate() const;

 private:
  void accumulate(int n, HoResult& out) const;
  const Association* as_;
  HandoverOptions opt_;
};

HoResult ho_probability(const Scenario& s, const HandoverOptions& opt = {});

}  // namespace irsho
