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

#include "core/scenario.hpp"

namespace irsho {

// Average received power, fading averaged out (E[h] = 1).
double rx_power_direct(LosState state, double d0, const Scenario& s);

// N^2 + N (1 - (1/m^2) (Gamma(m+1/2)/Gamma(m))^4)
double beamforming_gain(int n_elements, double m_los);

// p_t K_L^2 G r0^-aL d0'^-aL
double rx_power_reflected(double r0, double d0_prime, const Scenario& s);

}  // namespace irsho
