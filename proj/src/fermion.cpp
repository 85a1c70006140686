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

#include "hqca/fermion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "hqca/sampling.hpp"

namespace hqca {

namespace {

constexpr double kOccupationSlack = 1e-9;

// Columns u_{., c}(tau) for the occupied sites c.
Eigen::MatrixXcd occupied_columns(const WalkSpectrum& spec, const OccupationSpec& occ, double tau) {
  const int n = occ.length;
  Eigen::MatrixXcd a(n, occ.particle_count());
  std::vector<std::complex<double>> column(static_cast<std::size_t>(n));
  for (int c = occ.first_occupied; c <= n; ++c) {
    kernels::propagator_column(spec, c, tau, column);
    for (int m = 0; m < n; ++m) a(m, c - occ.first_occupied) = column[static_cast<std::size_t>(m)];
  }
  return a;
}

std::vector<double> occupations_from_columns(const Eigen::MatrixXcd& columns, int region_end) {
  const Eigen::MatrixXcd region = columns.topRows(region_end);
  // A A^dag (region x region) and A^dag A (particles x particles) share
  // their nonzero spectrum; diagonalize the smaller one.
  const Eigen::MatrixXcd gram = region.rows() < region.cols()
                                    ? Eigen::MatrixXcd(region * region.adjoint())
                                    : Eigen::MatrixXcd(region.adjoint() * region);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  std::vector<double> nu(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  for (double& v : nu) {
    if (v < -kOccupationSlack || v > 1.0 + kOccupationSlack) {
      throw std::domain_error("occupation eigenvalue " + std::to_string(v) + " outside [0, 1]");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return nu;
}

double tail_from(std::span<const double> dist, int threshold) {
  double s = 0.0;
  for (std::size_t x = static_cast<std::size_t>(std::max(threshold, 0)); x < dist.size(); ++x) s += dist[x];
  return s;
}

}  // namespace

OccupationSpec OccupationSpec::padded_chain(int f, int m) {
  if (f < 1 || m < 1) throw std::invalid_argument("padded_chain needs f >= 1 and M >= 1");
  OccupationSpec spec;
  spec.length = (f + 2) * m;
  spec.first_occupied = f * m + 1;
  spec.region_end = f * m;
  spec.threshold = m;
  spec.validate();
  return spec;
}

void OccupationSpec::validate() const {
  if (length < 1) throw std::invalid_argument("OccupationSpec: length must be >= 1");
  if (first_occupied < 1 || first_occupied > length) {
    throw std::invalid_argument("OccupationSpec: occupied block outside the line");
  }
  if (region_end < 0 || region_end >= first_occupied) {
    throw std::invalid_argument("OccupationSpec: region must end before the occupied block");
  }
}

Eigen::MatrixXcd correlation_matrix(const OccupationSpec& spec, double tau) {
  spec.validate();
  const WalkSpectrum walk(spec.length);
  const Eigen::MatrixXcd a = occupied_columns(walk, spec, tau);
  return a * a.adjoint();
}

double expected_left_count(const OccupationSpec& spec, double tau) {
  spec.validate();
  const WalkSpectrum walk(spec.length);
  const Eigen::MatrixXcd a = occupied_columns(walk, spec, tau);
  return a.topRows(spec.region_end).squaredNorm();
}

double averaged_left_count(const OccupationSpec& spec, double tau_max, kernels::Exec exec) {
  spec.validate();
  const WalkSpectrum walk(spec.length);
  const Eigen::MatrixXd kernel = kernels::time_average_kernel(walk.eigenvalues(), tau_max, exec);
  std::vector<double> dist(static_cast<std::size_t>(spec.length));
  double total = 0.0;
  for (int c = spec.first_occupied; c <= spec.length; ++c) {
    kernels::averaged_distribution(walk, c, kernel, dist, exec);
    for (int m = 1; m <= spec.region_end; ++m) total += dist[static_cast<std::size_t>(m - 1)];
  }
  return total;
}

std::vector<double> poisson_binomial(std::span<const double> probabilities) {
  std::vector<double> dist{1.0};
  dist.reserve(probabilities.size() + 1);
  for (double p : probabilities) {
    dist.push_back(0.0);
    for (std::size_t x = dist.size() - 1; x > 0; --x) dist[x] = dist[x] * (1.0 - p) + dist[x - 1] * p;
    dist[0] *= (1.0 - p);
  }
  return dist;
}

std::vector<double> region_occupations(const OccupationSpec& spec, double tau) {
  spec.validate();
  const WalkSpectrum walk(spec.length);
  return occupations_from_columns(occupied_columns(walk, spec, tau), spec.region_end);
}

std::vector<double> left_count_distribution(const OccupationSpec& spec, double tau) {
  const auto nu = region_occupations(spec, tau);
  auto dist = poisson_binomial(nu);
  dist.resize(static_cast<std::size_t>(spec.particle_count()) + 1, 0.0);
  return dist;
}

double success_probability(const OccupationSpec& spec, double tau) {
  const auto dist = left_count_distribution(spec, tau);
  return tail_from(dist, spec.threshold);
}

Lemma3Estimate lemma3_success(const OccupationSpec& spec, double tau_max, std::size_t sample_count,
                              std::uint64_t seed, kernels::Exec exec) {
  spec.validate();
  if (sample_count < 1) throw std::invalid_argument("lemma3_success needs at least one sample");
  const WalkSpectrum walk(spec.length);
  const auto taus = sample_times(tau_max, sample_count, seed);
  Lemma3Estimate result;
  result.samples = kernels::map_indexed<FermionSample>(
      sample_count,
      [&](std::size_t i) {
        FermionSample s;
        s.tau = taus[i];
        const Eigen::MatrixXcd a = occupied_columns(walk, spec, s.tau);
        s.expected_count = a.topRows(spec.region_end).squaredNorm();
        const auto nu = occupations_from_columns(a, spec.region_end);
        s.success = tail_from(poisson_binomial(nu), spec.threshold);
        return s;
      },
      exec);
  std::vector<double> values(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) values[i] = result.samples[i].success;
  result.estimate = kernels::ordered_sum(values) / static_cast<double>(sample_count);
  return result;
}

}  // namespace hqca
