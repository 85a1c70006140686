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

// Continuous-time quantum walk on a path of L sites with H = -adjacency.

#ifndef HQCA_WALK_HPP
#define HQCA_WALK_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hqca/kernels.hpp"

namespace hqca {

/// Closed-form spectrum of the path graph:
///   lambda_j = -2 cos(j pi / (L+1)),
///   phi^(j)_k = sqrt(2/(L+1)) sin(j k pi / (L+1)),   j, k = 1..L.
/// Eigenvectors are evaluated on demand from a table of sin(r pi/(L+1)),
/// so memory stays O(L) even for lines with thousands of sites.
class WalkSpectrum {
 public:
  explicit WalkSpectrum(int length);

  int length() const { return length_; }
  double eigenvalue(int j) const { return eigenvalues_[static_cast<std::size_t>(j - 1)]; }
  std::span<const double> eigenvalues() const { return eigenvalues_; }

  double component(int j, int k) const {
    return norm_ * sin_table_[static_cast<std::size_t>((static_cast<long long>(j) * k) % period())];
  }
  double norm() const { return norm_; }
  int period() const { return 2 * (length_ + 1); }
  std::span<const double> sin_table() const { return sin_table_; }

  /// Row j-1 holds phi^(j).
  Eigen::MatrixXd eigenvectors() const;

 private:
  int length_;
  double norm_;
  std::vector<double> eigenvalues_;
  std::vector<double> sin_table_;
};

/// Dense -adjacency matrix of the path.
Eigen::MatrixXd path_hamiltonian(int length);

WalkSpectrum spectrum(int length);

/// u(tau) = sum_j exp(-i lambda_j tau) |phi_j><phi_j|; entry (m-1, c-1) = <m|u|c>.
Eigen::MatrixXcd propagator(const WalkSpectrum& spectrum, double tau);
Eigen::MatrixXcd propagator(int length, double tau);

/// p_tau(m|c) = |<m| exp(-i H tau) |c>|^2.
double walk_probability(int length, double tau, int c, int m);

/// pi(m|c) = (2 + delta_{m,c} + delta_{m,L+1-c}) / (2(L+1)).
std::vector<double> limiting_distribution(int length, int c);

/// Exact time average of p_t(.|c) over t in [0, tau_max]; no quadrature.
std::vector<double> averaged_distribution(const WalkSpectrum& spectrum, int c, double tau_max,
                                          kernels::Exec exec = kernels::Exec::OpenMP);
std::vector<double> averaged_distribution(int length, int c, double tau_max);

/// Success threshold for the line: positions strictly above floor(L/6).
inline int lemma2_threshold(int length) { return length / 6; }

/// Time-averaged probability of ending at a position m > floor(L/6).
double lemma2_success(int length, int c, double tau_max);

/// Probability mass of `dist` on positions m > threshold (1-based).
double tail_mass(std::span<const double> dist, int threshold);

double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace hqca

#endif  // HQCA_WALK_HPP
