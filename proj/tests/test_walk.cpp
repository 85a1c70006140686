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


#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "hqca/walk.hpp"

namespace hqca {
namespace {

using Complex = std::complex<double>;

Eigen::MatrixXcd dense_exp(int length, double tau) {
  const Eigen::MatrixXcd a = Complex(0.0, -tau) * path_hamiltonian(length).cast<Complex>();
  return a.exp();
}

// Composite Simpson rule for the time average of |<m|u(t)|c>|^2.
std::vector<double> quadrature_average(int length, int c, double tau_max, int intervals) {
  const WalkSpectrum s(length);
  std::vector<double> avg(static_cast<std::size_t>(length), 0.0);
  const double h = tau_max / intervals;
  for (int i = 0; i <= intervals; ++i) {
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const Eigen::MatrixXcd u = propagator(s, i * h);
    for (int m = 1; m <= length; ++m) avg[static_cast<std::size_t>(m - 1)] += w * std::norm(u(m - 1, c - 1));
  }
  for (double& v : avg) v *= h / 3.0 / tau_max;
  return avg;
}

TEST(Spectrum, ClosedFormAtLengthThree) {
  const WalkSpectrum s(3);
  EXPECT_NEAR(s.eigenvalue(1), -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.eigenvalue(2), 0.0, 1e-12);
  EXPECT_NEAR(s.eigenvalue(3), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.component(2, 1), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.component(2, 2), 0.0, 1e-12);
  EXPECT_NEAR(s.component(2, 3), -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Spectrum, MatchesNumericalDiagonalization) {
  for (int length : {1, 2, 5, 12, 40}) {
    const WalkSpectrum s(length);
    const Eigen::MatrixXd h = path_hamiltonian(length);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const Eigen::MatrixXd v = s.eigenvectors();
    double trace = 0.0;
    for (int j = 1; j <= length; ++j) {
      EXPECT_NEAR(s.eigenvalue(j), solver.eigenvalues()(j - 1), 1e-12);
      const Eigen::VectorXd phi = v.row(j - 1).transpose();
      EXPECT_LE((h * phi - s.eigenvalue(j) * phi).cwiseAbs().maxCoeff(), 1e-12);
      if (j > 1) {
        EXPECT_GT(s.eigenvalue(j) - s.eigenvalue(j - 1), 1e-6);
      }
      trace += s.eigenvalue(j);
    }
    EXPECT_NEAR(trace, 0.0, 1e-12);
    EXPECT_LE((v * v.transpose() - Eigen::MatrixXd::Identity(length, length)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Propagator, UnitaryAndIdentityAtZero) {
  for (int length : {3, 10, 51}) {
    EXPECT_LE((propagator(length, 0.0) - Eigen::MatrixXcd::Identity(length, length)).cwiseAbs().maxCoeff(),
              1e-12);
    for (double tau : {0.1, 1.0, 10.0}) {
      const Eigen::MatrixXcd u = propagator(length, tau);
      EXPECT_LE((u.adjoint() * u - Eigen::MatrixXcd::Identity(length, length)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Propagator, MatchesDenseExponential) {
  for (int length : {2, 3, 7, 16}) {
    for (double tau : {0.3, 1.0, 4.5}) {
      EXPECT_LE((propagator(length, tau) - dense_exp(length, tau)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
  // Two sites: exp(i tau sigma_x).
  const Eigen::MatrixXcd u = propagator(2, 0.7);
  EXPECT_NEAR(std::abs(u(0, 0) - std::cos(0.7)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(u(1, 0) - Complex(0.0, std::sin(0.7))), 0.0, 1e-12);
}

TEST(Propagator, GroupProperty) {
  const WalkSpectrum s(13);
  const Eigen::MatrixXcd lhs = propagator(s, 2.5);
  const Eigen::MatrixXcd rhs = propagator(s, 1.1) * propagator(s, 1.4);
  EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(WalkProbability, NormalizedReflectedAndDelta) {
  for (int m = 1; m <= 6; ++m) EXPECT_NEAR(walk_probability(6, 0.0, 2, m), m == 2 ? 1.0 : 0.0, 1e-12);
  const double tau = std::numbers::pi / std::sqrt(2.0);
  double total = 0.0;
  const Eigen::MatrixXcd oracle = dense_exp(3, tau);
  for (int m = 1; m <= 3; ++m) {
    const double p = walk_probability(3, tau, 1, m);
    EXPECT_NEAR(p, std::norm(oracle(m - 1, 0)), 1e-12);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-10);
  for (int m = 1; m <= 9; ++m) EXPECT_NEAR(walk_probability(9, 3.3, 2, m), walk_probability(9, 3.3, 8, 10 - m), 1e-12);
}

TEST(Limiting, PrintedValues) {
  const auto a = limiting_distribution(3, 1);
  EXPECT_EQ(a, (std::vector<double>{3.0 / 8, 2.0 / 8, 3.0 / 8}));
  const auto b = limiting_distribution(3, 2);
  EXPECT_EQ(b, (std::vector<double>{2.0 / 8, 4.0 / 8, 2.0 / 8}));
}

TEST(Limiting, SumsToOneExactlyAndLowerBound) {
  for (int length = 1; length <= 40; ++length) {
    for (int c = 1; c <= length; ++c) {
      // Integer numerators over 2(L+1).
      long num = 0;
      for (int m = 1; m <= length; ++m) num += 2 + (m == c) + (m == length + 1 - c);
      EXPECT_EQ(num, 2L * (length + 1));
      for (double p : limiting_distribution(length, c)) EXPECT_GE(p, 1.0 / (length + 1) - 1e-15);
    }
  }
}

TEST(Averaged, MatchesQuadrature) {
  for (int length : {3, 6}) {
    const auto exact = averaged_distribution(length, 1, 7.0);
    const auto quad = quadrature_average(length, 1, 7.0, 4000);
    for (int m = 0; m < length; ++m) EXPECT_NEAR(exact[static_cast<std::size_t>(m)], quad[static_cast<std::size_t>(m)], 1e-9);
  }
}

TEST(Averaged, SmallBudgetIsDelta) {
  const auto d = averaged_distribution(8, 3, 1e-9);
  for (int m = 1; m <= 8; ++m) EXPECT_NEAR(d[static_cast<std::size_t>(m - 1)], m == 3 ? 1.0 : 0.0, 1e-12);
}

TEST(Averaged, LargeBudgetApproachesLimit) {
  const auto d = averaged_distribution(21, 1, 1e6);
  const auto pi = limiting_distribution(21, 1);
  for (std::size_t m = 0; m < d.size(); ++m) EXPECT_LE(std::abs(d[m] - pi[m]), 1e-3);
}

// TV <= C_L * L / tau on the grid tau = L 2^k, with C_L fitted per length;
// the fitted decay per doubling sits near 1/2.
TEST(Averaged, TotalVariationScalesAsLengthOverTau) {
  std::vector<double> fitted_c;
  for (int length : {11, 51, 101}) {
    const WalkSpectrum s(length);
    const auto pi = limiting_distribution(length, 1);
    double c_max = 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 2; k <= 10; ++k) {
      const double tau = length * std::ldexp(1.0, k);
      const double tv = total_variation(averaged_distribution(s, 1, tau), pi);
      c_max = std::max(c_max, tv * tau / length);
      const double lx = std::log(tau), ly = std::log(tv);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double slope = (9 * sxy - sx * sy) / (9 * sxx - sx * sx);
    EXPECT_GE(std::exp2(slope), 0.3) << length;
    EXPECT_LE(std::exp2(slope), 0.7) << length;
    EXPECT_LT(c_max, 0.1) << length;
    fitted_c.push_back(c_max);
  }
  const double spread = *std::max_element(fitted_c.begin(), fitted_c.end()) /
                        *std::min_element(fitted_c.begin(), fitted_c.end());
  // Factor 2.2 on this grid; the constant drifts slowly with L.
  RecordProperty("c_spread", std::to_string(spread));
  EXPECT_LT(spread, 2.5);
}

TEST(Lemma2, LimitAtLengthTwelve) {
  EXPECT_EQ(lemma2_threshold(12), 2);
  const auto pi = limiting_distribution(12, 1);
  EXPECT_NEAR(tail_mass(pi, 2), 21.0 / 26.0, 1e-15);
  EXPECT_NEAR(lemma2_success(12, 1, 1e9), 21.0 / 26.0, 1e-6);
}

TEST(Lemma2, DeskScaleBound) {
  const int length = 101;
  const double v = lemma2_success(length, 1, 10.0 * length * std::log(double(length)));
  EXPECT_GE(v, 5.0 / 6.0 - 0.05);
  EXPECT_LE(v, 1.0);
}

TEST(TotalVariation, Basics) {
  const std::vector<double> a{0.5, 0.5}, b{1.0, 0.0};
  EXPECT_DOUBLE_EQ(total_variation(a, b), 0.5);
  EXPECT_EQ(total_variation(a, a), 0.0);
}

}  // namespace
}  // namespace hqca
