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

#include "hqca/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hqca/walk.hpp"

namespace hqca::kernels {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void fill_kernel_column(std::span<const double> ev, double tau, Eigen::MatrixXd& s, Eigen::Index k) {
  for (Eigen::Index j = 0; j < s.rows(); ++j) {
    s(j, k) = (j == k) ? 1.0
                       : sinc((ev[static_cast<std::size_t>(j)] - ev[static_cast<std::size_t>(k)]) * tau);
  }
}

// One entry of the averaged distribution. Uses the symmetry of the kernel:
// sum_{jk} a_j a_k S_jk = sum_j a_j^2 + 2 sum_{j<k} a_j a_k S_jk.
double averaged_entry(const WalkSpectrum& spec, int c, int m, const Eigen::MatrixXd& kernel,
                      std::vector<double>& a) {
  const int n = spec.length();
  for (int j = 1; j <= n; ++j) a[static_cast<std::size_t>(j - 1)] = spec.component(j, m) * spec.component(j, c);
  double diag = 0.0;
  double off = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ak = a[static_cast<std::size_t>(k)];
    diag += ak * ak;
    const double* col = kernel.data() + static_cast<std::ptrdiff_t>(k) * n;
    double partial = 0.0;
    for (int j = 0; j < k; ++j) partial += col[j] * a[static_cast<std::size_t>(j)];
    off += ak * partial;
  }
  return diag + 2.0 * off;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Eigen::MatrixXd time_average_kernel(std::span<const double> eigenvalues, double tau, Exec exec) {
  const auto n = static_cast<Eigen::Index>(eigenvalues.size());
  Eigen::MatrixXd s(n, n);
  if (exec == Exec::Serial) {
    for (Eigen::Index k = 0; k < n; ++k) fill_kernel_column(eigenvalues, tau, s, k);
    return s;
  }
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < n; ++k) fill_kernel_column(eigenvalues, tau, s, k);
  return s;
}

void averaged_distribution(const WalkSpectrum& spectrum, int c, const Eigen::MatrixXd& kernel,
                           std::span<double> out, Exec exec) {
  const int n = spectrum.length();
  if (kernel.rows() != n || kernel.cols() != n || static_cast<int>(out.size()) != n) {
    throw std::invalid_argument("averaged_distribution: size mismatch");
  }
  if (exec == Exec::Serial) {
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m) out[static_cast<std::size_t>(m - 1)] = averaged_entry(spectrum, c, m, kernel, a);
    return;
  }
#pragma omp parallel
  {
    std::vector<double> a(static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 4)
    for (int m = 1; m <= n; ++m) out[static_cast<std::size_t>(m - 1)] = averaged_entry(spectrum, c, m, kernel, a);
  }
}

void propagator_column(const WalkSpectrum& spectrum, int c, double tau,
                       std::span<std::complex<double>> out) {
  const int n = spectrum.length();
  if (static_cast<int>(out.size()) != n) throw std::invalid_argument("propagator_column: size mismatch");
  if (c < 1 || c > n) throw std::out_of_range("propagator_column: c out of range");
  if (tau == 0.0) {  // u(0) = 1 exactly, without roundoff from the spectral sum
    std::fill(out.begin(), out.end(), std::complex<double>(0.0));
    out[static_cast<std::size_t>(c - 1)] = 1.0;
    return;
  }
  std::vector<std::complex<double>> b(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    b[static_cast<std::size_t>(j - 1)] =
        spectrum.norm() * spectrum.component(j, c) * std::polar(1.0, -spectrum.eigenvalue(j) * tau);
  }
  // phi_j(m) = norm * sin_table[(j m) mod period]; walk the residue incrementally.
  const auto table = spectrum.sin_table();
  const int period = spectrum.period();
  for (int m = 1; m <= n; ++m) {
    double re = 0.0;
    double im = 0.0;
    int r = 0;
    for (int j = 1; j <= n; ++j) {
      r += m;
      if (r >= period) r -= period;
      const double s = table[static_cast<std::size_t>(r)];
      re += b[static_cast<std::size_t>(j - 1)].real() * s;
      im += b[static_cast<std::size_t>(j - 1)].imag() * s;
    }
    out[static_cast<std::size_t>(m - 1)] = {re, im};
  }
}

namespace {

// FFTW planning is not thread safe; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

SineTransformPropagator::SineTransformPropagator(const WalkSpectrum& spectrum) : spectrum_(spectrum) {
  const int n = spectrum.length();
  std::vector<double> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_ = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_ == nullptr) throw std::runtime_error("FFTW could not plan a sine transform");
}

SineTransformPropagator::~SineTransformPropagator() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void SineTransformPropagator::column(int c, double tau, std::span<std::complex<double>> out) const {
  const int n = spectrum_.length();
  if (static_cast<int>(out.size()) != n) throw std::invalid_argument("SineTransformPropagator: size mismatch");
  if (c < 1 || c > n) throw std::out_of_range("SineTransformPropagator: c out of range");
  if (tau == 0.0) {  // u(0) = 1 exactly, without roundoff from the spectral sum
    std::fill(out.begin(), out.end(), std::complex<double>(0.0));
    out[static_cast<std::size_t>(c - 1)] = 1.0;
    return;
  }
  std::vector<double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const auto b = spectrum_.component(j, c) * std::polar(1.0, -spectrum_.eigenvalue(j) * tau);
    re[static_cast<std::size_t>(j - 1)] = b.real();
    im[static_cast<std::size_t>(j - 1)] = b.imag();
  }
  // RODFT00: Y_k = 2 sum_j X_j sin(pi (j+1)(k+1) / (n+1)).
  // The plan is out of place, so execution must be too.
  std::vector<double> re_out(static_cast<std::size_t>(n)), im_out(static_cast<std::size_t>(n));
  auto plan = static_cast<fftw_plan>(plan_);
  fftw_execute_r2r(plan, re.data(), re_out.data());
  fftw_execute_r2r(plan, im.data(), im_out.data());
  const double scale = 0.5 * spectrum_.norm();
  for (std::size_t m = 0; m < static_cast<std::size_t>(n); ++m) out[m] = {scale * re_out[m], scale * im_out[m]};
}

}  // namespace hqca::kernels
