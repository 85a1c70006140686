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

// Free fermions hopping on a path: single-particle correlation matrix and
// full counting statistics of the particle number in a left region.

#ifndef HQCA_FERMION_HPP
#define HQCA_FERMION_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hqca/kernels.hpp"
#include "hqca/walk.hpp"

namespace hqca {

/// Particles start on the contiguous block [first_occupied, L]; X counts
/// particles in the region [1, region_end].
struct OccupationSpec {
  int length = 0;
  int first_occupied = 0;
  int region_end = 0;
  /// Success means X >= threshold.
  int threshold = 0;

  /// The padded gate chain: L = (f+2)M, 2M particles on fM+1..L, region
  /// [1, fM], success when at least M particles reached the region.
  static OccupationSpec padded_chain(int f, int m);

  int particle_count() const { return length - first_occupied + 1; }
  void validate() const;
};

/// C_{mn}(tau) = sum_{c occupied} u_{mc}(tau) conj(u_{nc}(tau)).
Eigen::MatrixXcd correlation_matrix(const OccupationSpec& spec, double tau);

/// E_tau(X) = sum_{m <= region_end} C_{mm}(tau).
double expected_left_count(const OccupationSpec& spec, double tau);

/// Exact time average of E_t(X) over t in [0, tau_max].
double averaged_left_count(const OccupationSpec& spec, double tau_max,
                           kernels::Exec exec = kernels::Exec::OpenMP);

/// Distribution of a sum of independent Bernoulli(p_i); entry x is Pr[sum = x].
std::vector<double> poisson_binomial(std::span<const double> probabilities);

/// Occupation eigenvalues of the region block of C(tau). Only the nonzero
/// part of the spectrum is returned (at most min(|region|, particles)
/// values), computed from the smaller of the two Gram matrices.
std::vector<double> region_occupations(const OccupationSpec& spec, double tau);

/// Pr[X = x] for x = 0..particle_count. Throws std::domain_error when an
/// occupation eigenvalue leaves [-1e-9, 1 + 1e-9].
std::vector<double> left_count_distribution(const OccupationSpec& spec, double tau);

/// Pr[X >= spec.threshold] at one time.
double success_probability(const OccupationSpec& spec, double tau);

struct FermionSample {
  double tau = 0.0;
  double expected_count = 0.0;
  double success = 0.0;
};

struct Lemma3Estimate {
  double estimate = 0.0;  ///< mean of success over the samples
  std::vector<FermionSample> samples;
};

/// Monte-Carlo average of Pr[X >= threshold] over tau ~ Uniform(0, tau_max).
Lemma3Estimate lemma3_success(const OccupationSpec& spec, double tau_max, std::size_t sample_count,
                              std::uint64_t seed, kernels::Exec exec = kernels::Exec::OpenMP);

/// Lower bound (f-2)/(f+2) approached as tau_max grows.
inline double lemma3_asymptotic_bound(int f) { return static_cast<double>(f - 2) / (f + 2); }

}  // namespace hqca

#endif  // HQCA_FERMION_HPP
