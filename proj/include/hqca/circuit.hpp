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

#ifndef HQCA_CIRCUIT_HPP
#define HQCA_CIRCUIT_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hqca {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-10;

/// Two-qubit gates of the nearest-neighbor normal form.
///
/// W is a controlled pi/2 rotation about y with the control on the LEFT qubit.
/// S swaps the pair, I does nothing.
enum class Gate : std::uint8_t { W, S, I };

/// 4x4 unitary with rows/columns ordered |00>, |01>, |10>, |11>; the left
/// qubit is the more significant bit.
Eigen::Matrix4cd gate_matrix(Gate gate);

char gate_symbol(Gate gate);

/// Accepts "W", "S", "I". Anything else, including mirrored spellings of W
/// with the control on the right, throws std::invalid_argument.
Gate parse_gate(std::string_view token);

/// K rounds of N-1 nearest-neighbor gates on an N-qubit line. Gate g of a
/// round (1-based) acts on qubits (g, g+1).
class Circuit {
 public:
  Circuit(int n_qubits, std::vector<std::vector<Gate>> rounds);

  /// Parses {"n_qubits": N, "rounds": [["W","S"], ...]}.
  static Circuit from_json_text(std::string_view text);
  static Circuit from_json_file(const std::string& path);
  std::string to_json_text() const;

  int n_qubits() const { return n_qubits_; }
  int n_rounds() const { return static_cast<int>(rounds_.size()); }
  const std::vector<std::vector<Gate>>& rounds() const { return rounds_; }
  Gate gate(int round, int g) const { return rounds_.at(round - 1).at(g - 1); }

  /// A circuit of the same shape made only of identities.
  static Circuit identity(int n_qubits, int n_rounds);

 private:
  int n_qubits_;
  std::vector<std::vector<Gate>> rounds_;
};

/// State of N qubits. Qubit 1 is the most significant bit of the basis index;
/// this is the only place the 1-based site labels meet 0-based storage.
class QubitState {
 public:
  explicit QubitState(Eigen::VectorXcd amplitudes);

  /// Computational basis state |b_1 ... b_N>.
  static QubitState basis(std::span<const int> bits);
  static QubitState basis(std::string_view bits);

  int n_qubits() const { return n_qubits_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& mutable_amplitudes() { return amplitudes_; }

  /// Bit mask selecting `qubit` (1-based) inside a basis index.
  std::size_t qubit_mask(int qubit) const;

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kNormTolerance) const;

 private:
  Eigen::VectorXcd amplitudes_;
  int n_qubits_;
};

/// Applies an arbitrary 4x4 matrix to qubits (left_qubit, left_qubit + 1).
void apply_two_qubit_unitary(const Eigen::Matrix4cd& u, QubitState& state, int left_qubit);

QubitState apply_two_qubit_gate(Gate gate, const QubitState& state, int left_qubit);

/// Applies U_{1,1}, ..., U_{1,N-1}, U_{2,1}, ... in that order.
QubitState simulate_circuit(const Circuit& circuit, const QubitState& input);

/// <sigma_z> on `qubit` with sigma_z|1> = +|1>, so bit 1 reads as +1.
double output_sigma_z(const QubitState& state, int qubit);

/// Probability that `qubit` is measured as 1.
double probability_one(const QubitState& state, int qubit);

double fidelity(const QubitState& a, const QubitState& b);

}  // namespace hqca

#endif  // HQCA_CIRCUIT_HPP
