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


#include <bit>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "hqca/fermion.hpp"
#include "hqca/walk.hpp"

namespace hqca {
namespace {

using Complex = std::complex<double>;

// Hard-core particles hopping between neighbours: basis = bit masks of
// weight n over L sites (bit m-1 = site m). Adjacent hops cross no other
// particle, so no Jordan-Wigner signs appear.
struct ManyBody {
  std::vector<unsigned> configs;
  Eigen::MatrixXcd h;
};

ManyBody many_body(int length, int particles) {
  ManyBody mb;
  for (unsigned mask = 0; mask < (1u << length); ++mask)
    if (std::popcount(mask) == particles) mb.configs.push_back(mask);
  const auto dim = static_cast<Eigen::Index>(mb.configs.size());
  mb.h = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b) {
      const unsigned diff = mb.configs[a] ^ mb.configs[b];
      if (std::popcount(diff) == 2 && (diff & (diff >> 1))) mb.h(a, b) = -1.0;
    }
  return mb;
}

std::vector<double> many_body_counts(const OccupationSpec& spec, double tau) {
  const ManyBody mb = many_body(spec.length, spec.particle_count());
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(mb.configs.size()));
  unsigned start = 0;
  for (int s = spec.first_occupied; s <= spec.length; ++s) start |= 1u << (s - 1);
  for (std::size_t i = 0; i < mb.configs.size(); ++i)
    if (mb.configs[i] == start) psi(static_cast<Eigen::Index>(i)) = 1.0;
  const Eigen::MatrixXcd u = (Complex(0.0, -tau) * mb.h).exp();
  const Eigen::VectorXcd out = u * psi;
  std::vector<double> counts(static_cast<std::size_t>(spec.particle_count()) + 1, 0.0);
  const unsigned region = (1u << spec.region_end) - 1;
  for (std::size_t i = 0; i < mb.configs.size(); ++i)
    counts[static_cast<std::size_t>(std::popcount(mb.configs[i] & region))] += std::norm(out(static_cast<Eigen::Index>(i)));
  return counts;
}

OccupationSpec small_spec() { return OccupationSpec{8, 5, 4, 2}; }

TEST(OccupationSpec, PaddedChain) {
  const auto s = OccupationSpec::padded_chain(22, 5);
  EXPECT_EQ(s.length, 120);
  EXPECT_EQ(s.first_occupied, 111);
  EXPECT_EQ(s.region_end, 110);
  EXPECT_EQ(s.threshold, 5);
  EXPECT_EQ(s.particle_count(), 10);
  EXPECT_THROW(OccupationSpec::padded_chain(0, 5), std::invalid_argument);
  EXPECT_THROW((OccupationSpec{8, 4, 4, 1}.validate()), std::invalid_argument);
}

TEST(Correlation, InitialProjector) {
  const auto c = correlation_matrix(small_spec(), 0.0);
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n) EXPECT_NEAR(std::abs(c(m, n) - (m == n && m >= 4 ? 1.0 : 0.0)), 0.0, 1e-12);
}

TEST(Correlation, HermitianTraceAndSpectrum) {
  const auto spec = OccupationSpec::padded_chain(4, 3);
  for (double tau : {0.4, 3.0, 25.0}) {
    const Eigen::MatrixXcd c = correlation_matrix(spec, tau);
    EXPECT_LE((c - c.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(c.trace().real(), 6.0, 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(c);
    EXPECT_GE(solver.eigenvalues().minCoeff(), -1e-9);
    EXPECT_LE(solver.eigenvalues().maxCoeff(), 1.0 + 1e-9);
    // Diagonal = sum of single-particle walk probabilities.
    for (int m = 1; m <= spec.length; ++m) {
      double p = 0.0;
      for (int src = spec.first_occupied; src <= spec.length; ++src) p += walk_probability(spec.length, tau, src, m);
      EXPECT_NEAR(c(m - 1, m - 1).real(), p, 1e-12);
    }
  }
}

TEST(PoissonBinomial, ExactSmallCases) {
  EXPECT_EQ(poisson_binomial(std::vector<double>{}), std::vector<double>{1.0});
  const auto d = poisson_binomial(std::vector<double>{0.5, 0.25});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_DOUBLE_EQ(d[0], 0.375);
  EXPECT_DOUBLE_EQ(d[1], 0.5);
  EXPECT_DOUBLE_EQ(d[2], 0.125);
}

TEST(Counting, InitialPointMass) {
  const auto d = left_count_distribution(small_spec(), 0.0);
  EXPECT_NEAR(d[0], 1.0, 1e-12);
  for (std::size_t x = 1; x < d.size(); ++x) EXPECT_NEAR(d[x], 0.0, 1e-12);
  EXPECT_NEAR(expected_left_count(small_spec(), 0.0), 0.0, 1e-12);
}

TEST(Counting, MatchesManyBodyEvolution) {
  for (double tau : {0.3, 1.7, 6.0}) {
    const auto fast = left_count_distribution(small_spec(), tau);
    const auto slow = many_body_counts(small_spec(), tau);
    ASSERT_EQ(fast.size(), slow.size());
    for (std::size_t x = 0; x < fast.size(); ++x) EXPECT_NEAR(fast[x], slow[x], 1e-8) << "tau=" << tau << " x=" << x;
  }
}

TEST(Counting, SlaterConsistencyOnSeveralShapes) {
  const std::vector<OccupationSpec> specs{{6, 4, 3, 1}, {9, 6, 5, 2}, {10, 6, 4, 3}, {7, 3, 2, 1}};
  for (const auto& spec : specs) {
    for (double tau : {0.9, 4.2}) {
      const auto fast = left_count_distribution(spec, tau);
      const auto slow = many_body_counts(spec, tau);
      for (std::size_t x = 0; x < fast.size(); ++x) EXPECT_NEAR(fast[x], slow[x], 1e-8);
      double mean = 0.0;
      for (std::size_t x = 0; x < fast.size(); ++x) mean += static_cast<double>(x) * fast[x];
      EXPECT_NEAR(mean, expected_left_count(spec, tau), 1e-9);
    }
  }
}

TEST(Counting, AveragedCountMatchesQuadrature) {
  const auto spec = OccupationSpec::padded_chain(4, 2);
  const double tau_max = 9.0;
  const int n = 3000;
  const double h = tau_max / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * expected_left_count(spec, i * h);
  }
  EXPECT_NEAR(averaged_left_count(spec, tau_max), s * h / 3.0 / tau_max, 1e-9);
}

TEST(Lemma3, ZeroBudgetAndReproducibility) {
  const auto spec = OccupationSpec::padded_chain(22, 2);
  EXPECT_EQ(lemma3_success(spec, 0.0, 20, 1).estimate, 0.0);
  const auto a = lemma3_success(spec, 500.0, 50, 9);
  const auto b = lemma3_success(spec, 500.0, 50, 9);
  EXPECT_EQ(a.estimate, b.estimate);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].success, success_probability(spec, a.samples[i].tau));
  }
  EXPECT_THROW(lemma3_success(spec, 1.0, 0, 1), std::invalid_argument);
}

TEST(Lemma3, AsymptoticBound) {
  EXPECT_DOUBLE_EQ(lemma3_asymptotic_bound(22), 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(lemma3_asymptotic_bound(4), 1.0 / 3.0);
}

}  // namespace
}  // namespace hqca
