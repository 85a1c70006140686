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

// Brute-force reference on tiny chains. Hamiltonians are assembled from the
// two-site bra-ket terms over the whole qudit Hilbert space and compared with
// the restricted models of hqca10 / hqca20.
//
// Local qudit digit = 2 * program_symbol + data_bit, with program symbols
// numbered as in Program10 / Program20. Site 1 is the most significant digit.

#ifndef HQCA_FULLSPACE_HPP
#define HQCA_FULLSPACE_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hqca/circuit.hpp"
#include "hqca/hqca10.hpp"
#include "hqca/hqca20.hpp"
#include "hqca/kernels.hpp"

namespace hqca {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;
/// Sparse amplitude vector keyed by full-space basis index (ordered, so
/// iteration is deterministic).
using SparseState = std::map<std::uint64_t, Complex>;

/// Basis index <-> digits of L qudits of dimension d.
class QuditCodec {
 public:
  QuditCodec(int d, int length);

  int d() const { return d_; }
  int length() const { return length_; }
  std::uint64_t dimension() const { return dimension_; }

  std::uint64_t encode(std::span<const int> digits) const;
  std::vector<int> decode(std::uint64_t index) const;
  /// Digit at 1-based site.
  int digit(std::uint64_t index, int site) const;
  std::uint64_t place(int site) const { return place_[static_cast<std::size_t>(site - 1)]; }
  /// Cyclic shift moving the digit on site s to site s + k.
  std::uint64_t shift(std::uint64_t index, int k) const;

 private:
  int d_;
  int length_;
  std::uint64_t dimension_;
  std::vector<std::uint64_t> place_;
};

inline constexpr std::uint64_t kMaxMatrixDimension = 200'000;
inline constexpr std::uint64_t kMaxSparseSupport = 2'000'000;

/// Gate matrix used for W by the d = 10 local term.
struct RuleTable10 {
  Eigen::Matrix4cd w = gate_matrix(Gate::W);

  /// W transposed: a deliberately wrong table for fault injection.
  static RuleTable10 corrupted();
};

/// Forward part R of a two-site term as a (d^2 x d^2) matrix; the bond
/// Hamiltonian is -(R + R^dag).
///   d = 10: R = sum_A |A empty><empty A| (x) 1 + |A ptr><ptr A| (x) A.
Eigen::MatrixXcd local_term10(const RuleTable10& table = {});
///   d = 20: R = P_1 + P_2 + P_3 + P_4a + P_4b + P_5a + P_5b + P_6a + P_6b.
Eigen::MatrixXcd local_term20(const RuleTable20& table = {});

/// H = -sum_{bonds} (R + R^dag) over the full space. Throws
/// std::length_error when d^L exceeds kMaxMatrixDimension.
SparseMatrixC build_full_hamiltonian(const Eigen::MatrixXcd& local, int d, int length,
                                     kernels::Exec exec = kernels::Exec::OpenMP);
SparseMatrixC build_full_h10(int length, const RuleTable10& table = {},
                             kernels::Exec exec = kernels::Exec::OpenMP);
SparseMatrixC build_full_h20(int length, const RuleTable20& table = {},
                             kernels::Exec exec = kernels::Exec::OpenMP);

/// -(R + R^dag) acting on one bond (1-based left site) only.
SparseMatrixC bond_operator(const Eigen::MatrixXcd& local, int d, int length, int bond);

/// H applied to a sparse state without forming H.
SparseState apply_hamiltonian(const Eigen::MatrixXcd& local, int d, int length, const SparseState& state);

/// Smallest set of basis indices containing `seeds` and closed under H.
/// Throws std::length_error above kMaxSparseSupport.
std::vector<std::uint64_t> closure_support(const Eigen::MatrixXcd& local, int d, int length,
                                           std::span<const std::uint64_t> seeds);

/// H restricted to `support` (sorted); exact when the support is closed.
SparseMatrixC hamiltonian_on_support(const Eigen::MatrixXcd& local, int d, int length,
                                     std::span<const std::uint64_t> support);

/// exp(-i H tau) v by Taylor series with step splitting.
Eigen::VectorXcd expmv(const SparseMatrixC& h, const Eigen::VectorXcd& v, double tau);

Eigen::VectorXcd to_dense(const SparseState& s, std::uint64_t dimension);

/// |phi_D> with the work register in `work`.
SparseState encode10(const Chain10& chain, const GateConfig& config, const QubitState& work);
SparseState encode20(const ChainState20& state);

struct CheckReport {
  std::string check;
  std::string instance;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

std::string to_json(const std::vector<CheckReport>& reports);

CheckReport verify_hermiticity(const SparseMatrixC& h, const std::string& instance);
/// Bond (j, j+1) equals the shifted bond (1, 2), entry by entry.
CheckReport verify_translation_invariance(const Eigen::MatrixXcd& local, int d, int length,
                                          const std::string& instance);
/// max |(1 - P) H P| for P the projector onto span(basis); basis must be
/// orthonormal.
CheckReport verify_subspace_invariance(const SparseMatrixC& h, const std::vector<Eigen::VectorXcd>& basis,
                                       const std::string& instance);
CheckReport verify_restriction_equality(const SparseMatrixC& h, const std::vector<Eigen::VectorXcd>& basis,
                                        const Eigen::MatrixXd& restricted, const std::string& instance);

/// Computational basis |phi_D> of a d = 10 chain embedded in the full space.
std::vector<Eigen::VectorXcd> embedded_basis10(const RestrictedEvolution10& evolution);

/// Full-space evolution of |phi_initial> against the restricted one.
CheckReport verify_evolution_agreement10(const RestrictedEvolution10& evolution, const SparseMatrixC& h,
                                         std::span<const double> taus, const std::string& instance);
/// Weight on basis states with any non-work data qubit in |1> along the taus.
CheckReport verify_extra_qubits10(const Chain10& chain, const SparseMatrixC& h, std::span<const double> taus,
                                  const std::string& instance);

/// H psi_t = -(psi_{t-1} + psi_{t+1}) for every t, matrix-free.
CheckReport verify_line_closure20(const StateLine20& line, const Eigen::MatrixXcd& local,
                                  const std::string& instance);
/// Largest amplitude of H psi_t on basis states outside every supp(psi_s).
CheckReport verify_line_column_scan20(const StateLine20& line, const Eigen::MatrixXcd& local,
                                      const std::string& instance);
/// Full-space evolution against the line walk. The evolution runs on the
/// closure of supp(psi_0) under H, which is exact and may be larger than
/// the union of the line supports.
CheckReport verify_evolution_agreement20(const StateLine20& line, const Eigen::MatrixXcd& local,
                                         std::span<const double> taus, const std::string& instance);

/// Every check on the fixed tiny instances:
///   d = 10: N = 2, K = 1, L = 4, circuits [W], [S], [I], all four inputs;
///   d = 20: N = 2, K = 1, L = 5, circuit [W], inputs |10>, |11>.
std::vector<CheckReport> run_oracle_suite(const RuleTable10& table10 = {}, const RuleTable20& table20 = {},
                                          kernels::Exec exec = kernels::Exec::OpenMP);

}  // namespace hqca

#endif  // HQCA_FULLSPACE_HPP
