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

#include "hqca/combinadic.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace hqca {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays exact because result = C(n-k+i-1, i-1).
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    if (result > std::numeric_limits<std::uint64_t>::max() / 2 / factor) {
      throw std::overflow_error("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                                ") overflows");
    }
    result = result * factor / static_cast<std::uint64_t>(i);
  }
  return result;
}

Combinadic::Combinadic(int n, int k) : n_(n), k_(k), count_(binomial(n, k)) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("Combinadic needs 0 <= k <= n");
  table_.assign(static_cast<std::size_t>(n_ + 1) * (k_ + 1), 0);
  for (int i = 0; i <= n_; ++i) {
    for (int j = 0; j <= k_ && j <= i; ++j) {
      table_[static_cast<std::size_t>(i) * (k_ + 1) + j] =
          (j == 0 || j == i) ? 1 : choose(i - 1, j - 1) + choose(i - 1, j);
    }
  }
}

std::uint64_t Combinadic::choose(int n, int k) const {
  if (k < 0 || n < 0 || k > n) return 0;
  return table_[static_cast<std::size_t>(n) * (k_ + 1) + k];
}

std::uint64_t Combinadic::rank(std::span<const int> positions) const {
  if (static_cast<int>(positions.size()) != k_) {
    throw std::invalid_argument("Combinadic::rank: wrong subset size");
  }
  std::uint64_t r = 0;
  int prev = 0;
  for (int i = 0; i < k_; ++i) {
    const int a = positions[i];
    if (a <= prev || a > n_) throw std::invalid_argument("Combinadic::rank: positions not sorted in 1..n");
    // Every tuple whose i-th entry is v in (prev, a) precedes this one.
    for (int v = prev + 1; v < a; ++v) r += choose(n_ - v, k_ - i - 1);
    prev = a;
  }
  return r;
}

std::vector<int> Combinadic::unrank(std::uint64_t r) const {
  if (r >= count_) throw std::out_of_range("Combinadic::unrank: rank out of range");
  std::vector<int> positions(k_);
  int v = 1;
  for (int i = 0; i < k_; ++i) {
    for (;; ++v) {
      const std::uint64_t block = choose(n_ - v, k_ - i - 1);
      if (r < block) break;
      r -= block;
    }
    positions[i] = v++;
  }
  return positions;
}

}  // namespace hqca
