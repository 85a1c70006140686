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

#include "hqca/walk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hqca {

using Complex = std::complex<double>;

namespace {

void check_site(int length, int site, const char* what) {
  if (site < 1 || site > length) {
    throw std::out_of_range(std::string(what) + " = " + std::to_string(site) + " outside 1.." +
                            std::to_string(length));
  }
}

}  // namespace

WalkSpectrum::WalkSpectrum(int length) : length_(length) {
  if (length < 1) throw std::invalid_argument("walk length must be >= 1");
  const double denom = static_cast<double>(length + 1);
  norm_ = std::sqrt(2.0 / denom);
  eigenvalues_.resize(static_cast<std::size_t>(length));
  for (int j = 1; j <= length; ++j) {
    eigenvalues_[static_cast<std::size_t>(j - 1)] = -2.0 * std::cos(j * std::numbers::pi / denom);
  }
  sin_table_.resize(static_cast<std::size_t>(period()));
  for (int r = 0; r < period(); ++r) {
    sin_table_[static_cast<std::size_t>(r)] = std::sin(r * std::numbers::pi / denom);
  }
}

Eigen::MatrixXd WalkSpectrum::eigenvectors() const {
  Eigen::MatrixXd phi(length_, length_);
  for (int j = 1; j <= length_; ++j) {
    for (int k = 1; k <= length_; ++k) phi(j - 1, k - 1) = component(j, k);
  }
  return phi;
}

Eigen::MatrixXd path_hamiltonian(int length) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(length, length);
  for (int j = 0; j + 1 < length; ++j) {
    h(j, j + 1) = -1.0;
    h(j + 1, j) = -1.0;
  }
  return h;
}

WalkSpectrum spectrum(int length) { return WalkSpectrum(length); }

Eigen::MatrixXcd propagator(const WalkSpectrum& spectrum, double tau) {
  const int n = spectrum.length();
  const Eigen::MatrixXd phi = spectrum.eigenvectors();
  Eigen::VectorXcd phases(n);
  for (int j = 0; j < n; ++j) phases(j) = std::polar(1.0, -spectrum.eigenvalues()[j] * tau);
  // u = Phi^T diag(phases) Phi
  return phi.transpose().cast<Complex>() * phases.asDiagonal() * phi.cast<Complex>();
}

Eigen::MatrixXcd propagator(int length, double tau) { return propagator(WalkSpectrum(length), tau); }

double walk_probability(int length, double tau, int c, int m) {
  check_site(length, c, "c");
  check_site(length, m, "m");
  const WalkSpectrum spec(length);
  std::vector<Complex> column(static_cast<std::size_t>(length));
  kernels::propagator_column(spec, c, tau, column);
  return std::norm(column[static_cast<std::size_t>(m - 1)]);
}

std::vector<double> limiting_distribution(int length, int c) {
  check_site(length, c, "c");
  std::vector<double> pi(static_cast<std::size_t>(length));
  const double denom = 2.0 * (length + 1);
  for (int m = 1; m <= length; ++m) {
    const int hits = 2 + (m == c ? 1 : 0) + (m == length + 1 - c ? 1 : 0);
    pi[static_cast<std::size_t>(m - 1)] = hits / denom;
  }
  return pi;
}

std::vector<double> averaged_distribution(const WalkSpectrum& spectrum, int c, double tau_max,
                                          kernels::Exec exec) {
  check_site(spectrum.length(), c, "c");
  if (!(tau_max >= 0.0)) throw std::invalid_argument("tau_max must be >= 0");
  const Eigen::MatrixXd kernel = kernels::time_average_kernel(spectrum.eigenvalues(), tau_max, exec);
  std::vector<double> out(static_cast<std::size_t>(spectrum.length()));
  kernels::averaged_distribution(spectrum, c, kernel, out, exec);
  return out;
}

std::vector<double> averaged_distribution(int length, int c, double tau_max) {
  return averaged_distribution(WalkSpectrum(length), c, tau_max);
}

double tail_mass(std::span<const double> dist, int threshold) {
  double s = 0.0;
  for (std::size_t m = static_cast<std::size_t>(std::max(threshold, 0)); m < dist.size(); ++m) s += dist[m];
  return s;
}

double lemma2_success(int length, int c, double tau_max) {
  const auto dist = averaged_distribution(length, c, tau_max);
  return tail_mass(dist, lemma2_threshold(length));
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace hqca
