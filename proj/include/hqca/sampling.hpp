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

#ifndef HQCA_SAMPLING_HPP
#define HQCA_SAMPLING_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace hqca {

/// Name recorded in every output file next to the seed.
inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64 seeded by seed_seq{seed_lo,seed_hi,index_lo,index_hi}; u=(x>>11)*2^-53";

/// Uniform draw in [0, 1) for sample `index` of stream `seed`. Each sample
/// owns its generator, so draws do not depend on evaluation order.
double uniform_draw(std::uint64_t seed, std::uint64_t index);

/// Evolution times tau_i = tau_max * u_i (inverse CDF of Uniform(0, tau_max)).
std::vector<double> sample_times(double tau_max, std::size_t count, std::uint64_t seed);

}  // namespace hqca

#endif  // HQCA_SAMPLING_HPP
