// Copyright 2026 The hqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqca/sampling.hpp"

#include <random>
#include <stdexcept>

namespace hqca {

double uniform_draw(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::vector<double> sample_times(double tau_max, std::size_t count, std::uint64_t seed) {
  if (!(tau_max >= 0.0)) throw std::invalid_argument("tau_max must be >= 0");
  std::vector<double> taus(count);
  for (std::size_t i = 0; i < count; ++i) taus[i] = tau_max * uniform_draw(seed, i);
  return taus;
}

}  // namespace hqca
