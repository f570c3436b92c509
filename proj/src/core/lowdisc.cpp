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
#include "core/lowdisc.hpp"

#include <boost/random/sobol.hpp>
#include <cmath>

namespace irsho {

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b * 0xD1B54A32D192ED03ULL));
  g();
  return g() ^ b;
}

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b, std::uint64_t c) { return mix_key(mix_key(a, b), c); }

std::vector<double> shifted_sobol(std::size_t n, unsigned dim, std::uint64_t seed) {
  boost::random::sobol eng(dim);
  SplitMix64 rng(mix_key(seed, 0x5EEDULL));
  std::vector<double> shift(dim);
  for (auto& s : shift) s = rng.uniform();
  std::vector<double> out(n * dim);
  const double range = static_cast<double>(eng.max() - eng.min()) + 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned j = 0; j < dim; ++j) {
      double u = static_cast<double>(eng() - eng.min()) / range + shift[j];
      u -= std::floor(u);
      out[i * dim + j] = u;
    }
  }
  return out;
}

}  // namespace irsho
