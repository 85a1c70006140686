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

#ifndef HQCA_COMBINADIC_HPP
#define HQCA_COMBINADIC_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace hqca {

/// C(n, k); throws std::overflow_error past 2^63.
std::uint64_t binomial(int n, int k);

/// Ranks k-subsets of {1..n} (sorted 1-based positions) in lexicographic
/// order of the position tuples: rank 0 is {1,...,k}, the last rank is
/// {n-k+1,...,n}.
class Combinadic {
 public:
  Combinadic(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t count() const { return count_; }

  std::uint64_t rank(std::span<const int> positions) const;
  std::vector<int> unrank(std::uint64_t rank) const;

 private:
  std::uint64_t choose(int n, int k) const;

  int n_;
  int k_;
  std::uint64_t count_;
  // table_[n * (k_ + 1) + k] = C(n, k) for n <= n_, k <= k_.
  std::vector<std::uint64_t> table_;
};

}  // namespace hqca

#endif  // HQCA_COMBINADIC_HPP
