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

// The d = 10 automaton. Each site carries a program symbol from
// {empty, pointer, W, S, I} and one data qubit. Gates hop left into empty
// sites unchanged, and hop across pointers while acting on the two data
// qubits below. Reachable chain states are labelled by the gate positions
// alone (a GateConfig); everything else is reconstructed from it.

#ifndef HQCA_HQCA10_HPP
#define HQCA_HQCA10_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hqca/circuit.hpp"
#include "hqca/combinadic.hpp"

namespace hqca {

enum class Program10 : std::uint8_t { Empty, Pointer, W, S, I };

Program10 program_symbol(Gate gate);
/// '.', '>', 'W', 'S', 'I'  ('>' stands for the pointer).
char program10_char(Program10 p);
std::string program10_string(const std::vector<Program10>& program);

/// Circuit + input + padding choice. All layout arithmetic lives here.
class Chain10 {
 public:
  static constexpr int kDefaultPadFactor = 22;

  Chain10(Circuit circuit, std::vector<int> input_bits, bool padded, int pad_factor = kDefaultPadFactor);

  const Circuit& circuit() const { return circuit_; }
  const std::vector<int>& input_bits() const { return input_bits_; }
  bool padded() const { return padded_; }
  int pad_factor() const { return pad_factor_; }

  int n_qubits() const { return circuit_.n_qubits(); }
  int n_rounds() const { return circuit_.n_rounds(); }
  /// M = K N.
  int program_length() const { return n_qubits() * n_rounds(); }
  /// 2M unpadded, (f+2)M padded.
  int length() const;
  /// M unpadded, 2M padded.
  int gate_count() const;
  /// Site of w_n is work_offset() + n: M unpadded, fM padded.
  int work_offset() const;
  /// Number of "empty^(N-1) pointer" blocks in the fill: K or fK.
  int fill_blocks() const;

  /// I U_{1,1}..U_{1,N-1} I U_{2,1} ... (+ M identities when padded).
  const std::vector<Gate>& program() const { return program_; }

  QubitState input_state() const;

 private:
  Circuit circuit_;
  std::vector<int> input_bits_;
  bool padded_;
  int pad_factor_;
  std::vector<Gate> program_;
};

/// Bit string of length L whose ones mark gate positions; stored as the
/// sorted 1-based positions a_1 < a_2 < ....
class GateConfig {
 public:
  GateConfig(int length, std::vector<int> positions);
  static GateConfig from_bits(std::string_view bits);

  int length() const { return length_; }
  int weight() const { return static_cast<int>(positions_.size()); }
  const std::vector<int>& positions() const { return positions_; }
  /// Position of gate m (1-based).
  int position(int m) const { return positions_.at(static_cast<std::size_t>(m - 1)); }
  bool occupied(int site) const;
  std::string bits() const;

  bool operator==(const GateConfig&) const = default;

 private:
  int length_;
  std::vector<int> positions_;
};

/// Program and data registers drawn out in full. Data labels are 0 for an
/// extra qubit (always |0>) and n for the work qubit w_n.
struct ChainPicture10 {
  std::vector<Program10> program;
  std::vector<int> data;
};

GateConfig initial_config(const Chain10& chain);
ChainPicture10 initial_picture(const Chain10& chain);

/// Fill reconstruction: program symbols at the gate positions in order, and
/// "empty^(N-1) pointer" repeated over the remaining sites.
std::vector<Program10> program_register(const Chain10& chain, const GateConfig& config);
/// Sites of the pointers, left to right.
std::vector<int> pointer_positions(const Chain10& chain, const GateConfig& config);

enum class Direction : std::uint8_t { Left, Right };

struct Move {
  int gate;  ///< 1-based gate index
  Direction direction;
  bool operator==(const Move&) const = default;
};

/// Hops into an adjacent empty slot of the bit string, in gate order with
/// Left before Right.
std::vector<Move> applicable_moves(const GateConfig& config);
GateConfig apply_move(const GateConfig& config, Move move);
Move inverse(Move move);

/// Number of leading program gates already applied to the work register:
///   - no pointer over the work qubits: N * (pointers right of w_N);
///   - a pointer over the work qubits: gates strictly left of it.
/// Throws std::logic_error when two pointers sit over the work qubits.
int config_prefix_length(const Chain10& chain, const GateConfig& config);

/// First `prefix` program gates applied to the input. Gate g of a round acts
/// on (w_g, w_{g+1}); the leading identity of each round is skipped.
QubitState work_state_after(const Chain10& chain, int prefix);

/// Enumerated basis of the computational subspace, ordered by Combinadic
/// rank of the gate positions.
class RestrictedSpace10 {
 public:
  static constexpr std::uint64_t kMaxDimension = 1'000'000;

  explicit RestrictedSpace10(const Chain10& chain);

  const Chain10& chain() const { return chain_; }
  std::size_t dimension() const { return static_cast<std::size_t>(combinadic_.count()); }
  GateConfig config(std::size_t index) const;
  std::size_t index(const GateConfig& config) const;
  std::size_t initial_index() const { return initial_index_; }

  /// prefix_length(i) = config_prefix_length(config(i)).
  int prefix_length(std::size_t index) const { return prefixes_[index]; }
  /// a_M <= fM (padded chains only).
  bool done(std::size_t index) const { return done_[index] != 0; }

  /// -1 between configs related by one hop, 0 elsewhere.
  Eigen::SparseMatrix<double> hamiltonian() const;

 private:
  Chain10 chain_;
  Combinadic combinadic_;
  std::size_t initial_index_;
  std::vector<int> prefixes_;
  std::vector<std::uint8_t> done_;
};

Eigen::SparseMatrix<double> restricted_hamiltonian(const Chain10& chain);

/// Amplitudes over a RestrictedSpace10 basis.
struct RestrictedState10 {
  std::shared_ptr<const RestrictedSpace10> space;
  Eigen::VectorXcd amplitudes;
};

/// Exact evolution inside the computational subspace from a cached dense
/// eigendecomposition of the restricted Hamiltonian.
class RestrictedEvolution10 {
 public:
  /// Dense diagonalization limit; larger spaces throw std::length_error.
  static constexpr std::size_t kMaxDenseDimension = 6000;

  explicit RestrictedEvolution10(const Chain10& chain);

  const RestrictedSpace10& space() const { return *space_; }
  std::shared_ptr<const RestrictedSpace10> shared_space() const { return space_; }
  const Eigen::VectorXd& energies() const { return energies_; }

  RestrictedState10 initial_state() const;
  RestrictedState10 evolve(const RestrictedState10& state, double tau) const;
  RestrictedState10 evolve_initial(double tau) const;

  /// Weight on configurations with a_M <= fM.
  double success_probability(const RestrictedState10& state) const;
  /// <sigma_z(w_N)> summed per configuration through the prefix rule.
  double sigma_z(const RestrictedState10& state) const;
  double energy(const RestrictedState10& state) const;

  const QubitState& work_state(int prefix) const { return work_states_.at(static_cast<std::size_t>(prefix)); }

 private:
  std::shared_ptr<const RestrictedSpace10> space_;
  Eigen::SparseMatrix<double> hamiltonian_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd modes_;
  std::vector<QubitState> work_states_;
  std::vector<double> work_sigma_z_;
};

RestrictedState10 evolve_restricted(const RestrictedEvolution10& evolution, const RestrictedState10& state,
                                    double tau);
double success_probability_exact(const Chain10& chain, double tau);
double sigma_z_expectation(const Chain10& chain, double tau);

}  // namespace hqca

#endif  // HQCA_HQCA10_HPP
