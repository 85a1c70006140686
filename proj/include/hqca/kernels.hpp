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

// Data-parallel kernels. Every kernel exists twice: a serial reference and
// an OpenMP version that distributes the same per-item work. Each item is
// computed by identical code in both, so results agree bit for bit and
// reductions are done afterwards in index order.

#ifndef HQCA_KERNELS_HPP
#define HQCA_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hqca {
class WalkSpectrum;
}

namespace hqca::kernels {

enum class Exec { Serial, OpenMP };

int max_threads();

/// S(j, k) = sinc((lambda_j - lambda_k) * tau), the time average of
/// exp(-i (lambda_j - lambda_k) t) over t in [0, tau] (real part; the
/// imaginary part cancels in symmetric sums).
Eigen::MatrixXd time_average_kernel(std::span<const double> eigenvalues, double tau, Exec exec);

/// out[m-1] = sum_{j,k} phi_j(m) phi_j(c) phi_k(m) phi_k(c) S(j,k).
void averaged_distribution(const WalkSpectrum& spectrum, int c, const Eigen::MatrixXd& kernel,
                           std::span<double> out, Exec exec);

/// out[m-1] = <m| exp(-i H tau) |c> for the path graph.
void propagator_column(const WalkSpectrum& spectrum, int c, double tau,
                       std::span<std::complex<double>> out);

/// Same column through a type-I discrete sine transform, O(L log L) per
/// call. The plan is made once in the constructor; column() may be called
/// from several threads at once.
class SineTransformPropagator {
 public:
  explicit SineTransformPropagator(const WalkSpectrum& spectrum);
  ~SineTransformPropagator();
  SineTransformPropagator(const SineTransformPropagator&) = delete;
  SineTransformPropagator& operator=(const SineTransformPropagator&) = delete;

  void column(int c, double tau, std::span<std::complex<double>> out) const;

 private:
  const WalkSpectrum& spectrum_;
  void* plan_;
};

/// result[i] = f(i). The OpenMP version schedules items dynamically.
template <class T, class F>
std::vector<T> map_indexed(std::size_t count, F&& f, Exec exec) {
  std::vector<T> result(count);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i) result[i] = f(i);
    return result;
  }
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) result[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  return result;
}

/// Sum in index order, independent of how the items were produced.
inline double ordered_sum(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace hqca::kernels

#endif  // HQCA_KERNELS_HPP
