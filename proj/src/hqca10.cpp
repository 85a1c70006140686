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

#include "hqca/hqca10.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace hqca {

Program10 program_symbol(Gate gate) {
  switch (gate) {
    case Gate::W:
      return Program10::W;
    case Gate::S:
      return Program10::S;
    case Gate::I:
      return Program10::I;
  }
  return Program10::I;
}

char program10_char(Program10 p) {
  switch (p) {
    case Program10::Empty:
      return '.';
    case Program10::Pointer:
      return '>';
    case Program10::W:
      return 'W';
    case Program10::S:
      return 'S';
    case Program10::I:
      return 'I';
  }
  return '?';
}

std::string program10_string(const std::vector<Program10>& program) {
  std::string s;
  s.reserve(program.size());
  for (Program10 p : program) s.push_back(program10_char(p));
  return s;
}

// ---------------------------------------------------------------------------
// Chain10

Chain10::Chain10(Circuit circuit, std::vector<int> input_bits, bool padded, int pad_factor)
    : circuit_(std::move(circuit)), input_bits_(std::move(input_bits)), padded_(padded), pad_factor_(pad_factor) {
  if (static_cast<int>(input_bits_.size()) != circuit_.n_qubits()) {
    throw std::invalid_argument("input has " + std::to_string(input_bits_.size()) + " bits, circuit has " +
                                std::to_string(circuit_.n_qubits()) + " qubits");
  }
  for (int b : input_bits_) {
    if (b != 0 && b != 1) throw std::invalid_argument("input bits must be 0 or 1");
  }
  if (padded_ && pad_factor_ < 1) throw std::invalid_argument("pad factor f must be >= 1");
  for (const auto& round : circuit_.rounds()) {
    program_.push_back(Gate::I);
    program_.insert(program_.end(), round.begin(), round.end());
  }
  if (padded_) program_.insert(program_.end(), static_cast<std::size_t>(program_length()), Gate::I);
}

int Chain10::length() const { return padded_ ? (pad_factor_ + 2) * program_length() : 2 * program_length(); }
int Chain10::gate_count() const { return padded_ ? 2 * program_length() : program_length(); }
int Chain10::work_offset() const { return padded_ ? pad_factor_ * program_length() : program_length(); }
int Chain10::fill_blocks() const { return padded_ ? pad_factor_ * n_rounds() : n_rounds(); }

QubitState Chain10::input_state() const { return QubitState::basis(std::span<const int>(input_bits_)); }

// ---------------------------------------------------------------------------
// GateConfig

GateConfig::GateConfig(int length, std::vector<int> positions) : length_(length), positions_(std::move(positions)) {
  if (length_ < 1) throw std::invalid_argument("GateConfig: length must be >= 1");
  int prev = 0;
  for (int a : positions_) {
    if (a <= prev || a > length_) throw std::invalid_argument("GateConfig: positions must be increasing in 1..L");
    prev = a;
  }
}

GateConfig GateConfig::from_bits(std::string_view bits) {
  std::vector<int> positions;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      positions.push_back(static_cast<int>(i) + 1);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("GateConfig::from_bits: expected 0/1");
    }
  }
  return GateConfig(static_cast<int>(bits.size()), std::move(positions));
}

bool GateConfig::occupied(int site) const { return std::binary_search(positions_.begin(), positions_.end(), site); }

std::string GateConfig::bits() const {
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int a : positions_) s[static_cast<std::size_t>(a - 1)] = '1';
  return s;
}

// ---------------------------------------------------------------------------
// Chain pictures

GateConfig initial_config(const Chain10& chain) {
  // Gates occupy the right end: M+1..2M unpadded, fM+1..(f+2)M padded.
  const int first = chain.length() - chain.gate_count() + 1;
  std::vector<int> positions(static_cast<std::size_t>(chain.gate_count()));
  for (int m = 0; m < chain.gate_count(); ++m) positions[static_cast<std::size_t>(m)] = first + m;
  return GateConfig(chain.length(), std::move(positions));
}

std::vector<Program10> program_register(const Chain10& chain, const GateConfig& config) {
  if (config.length() != chain.length() || config.weight() != chain.gate_count()) {
    throw std::invalid_argument("GateConfig does not match the chain (length " + std::to_string(config.length()) +
                                ", weight " + std::to_string(config.weight()) + ")");
  }
  const int n = chain.n_qubits();
  std::vector<Program10> program(static_cast<std::size_t>(chain.length()));
  int gate = 0;
  int zero = 0;
  for (int site = 1; site <= chain.length(); ++site) {
    auto& slot = program[static_cast<std::size_t>(site - 1)];
    if (config.occupied(site)) {
      slot = program_symbol(chain.program()[static_cast<std::size_t>(gate++)]);
    } else {
      ++zero;
      slot = (zero % n == 0) ? Program10::Pointer : Program10::Empty;
    }
  }
  return program;
}

std::vector<int> pointer_positions(const Chain10& chain, const GateConfig& config) {
  std::vector<int> pointers;
  int zero = 0;
  for (int site = 1; site <= config.length(); ++site) {
    if (config.occupied(site)) continue;
    if (++zero % chain.n_qubits() == 0) pointers.push_back(site);
  }
  return pointers;
}

ChainPicture10 initial_picture(const Chain10& chain) {
  ChainPicture10 picture;
  picture.program = program_register(chain, initial_config(chain));
  picture.data.assign(static_cast<std::size_t>(chain.length()), 0);
  for (int n = 1; n <= chain.n_qubits(); ++n) picture.data[static_cast<std::size_t>(chain.work_offset() + n - 1)] = n;
  return picture;
}

// ---------------------------------------------------------------------------
// Moves

std::vector<Move> applicable_moves(const GateConfig& config) {
  std::vector<Move> moves;
  const auto& a = config.positions();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int m = static_cast<int>(i) + 1;
    const bool left_free = a[i] > 1 && (i == 0 || a[i - 1] != a[i] - 1);
    const bool right_free = a[i] < config.length() && (i + 1 == a.size() || a[i + 1] != a[i] + 1);
    if (left_free) moves.push_back({m, Direction::Left});
    if (right_free) moves.push_back({m, Direction::Right});
  }
  return moves;
}

GateConfig apply_move(const GateConfig& config, Move move) {
  auto positions = config.positions();
  if (move.gate < 1 || move.gate > config.weight()) throw std::out_of_range("apply_move: gate index out of range");
  auto& a = positions[static_cast<std::size_t>(move.gate - 1)];
  const int target = a + (move.direction == Direction::Left ? -1 : 1);
  if (target < 1 || target > config.length() || config.occupied(target)) {
    throw std::invalid_argument("apply_move: target site is not free");
  }
  a = target;
  return GateConfig(config.length(), std::move(positions));
}

Move inverse(Move move) {
  return {move.gate, move.direction == Direction::Left ? Direction::Right : Direction::Left};
}

// ---------------------------------------------------------------------------
// Prefix rule

int config_prefix_length(const Chain10& chain, const GateConfig& config) {
  if (config.length() != chain.length() || config.weight() != chain.gate_count()) {
    throw std::invalid_argument("config_prefix_length: GateConfig does not match the chain");
  }
  const int first_work = chain.work_offset() + 1;
  const int last_work = chain.work_offset() + chain.n_qubits();
  const auto pointers = pointer_positions(chain, config);

  std::optional<int> over_work;
  int right_of_work = 0;
  for (int p : pointers) {
    if (p >= first_work && p <= last_work) {
      if (over_work) {
        throw std::logic_error("two pointers over the work qubits in " + config.bits() + " (unreachable)");
      }
      over_work = p;
    } else if (p > last_work) {
      ++right_of_work;
    }
  }
  int prefix = 0;
  if (over_work) {
    const auto& a = config.positions();
    prefix = static_cast<int>(std::lower_bound(a.begin(), a.end(), *over_work) - a.begin());
  } else {
    prefix = chain.n_qubits() * right_of_work;
  }
  if (prefix > chain.gate_count()) {
    throw std::logic_error("prefix " + std::to_string(prefix) + " exceeds the gate count for " + config.bits());
  }
  return prefix;
}

QubitState work_state_after(const Chain10& chain, int prefix) {
  if (prefix < 0 || prefix > chain.gate_count()) throw std::out_of_range("work_state_after: prefix out of range");
  QubitState state = chain.input_state();
  const int n = chain.n_qubits();
  for (int m = 1; m <= prefix; ++m) {
    const int slot = (m - 1) % n;  // 0 is the round's leading identity
    if (slot == 0) continue;
    apply_two_qubit_unitary(gate_matrix(chain.program()[static_cast<std::size_t>(m - 1)]), state, slot);
  }
  return state;
}

// ---------------------------------------------------------------------------
// RestrictedSpace10

namespace {

Combinadic checked_combinadic(const Chain10& chain) {
  const std::uint64_t dim = binomial(chain.length(), chain.gate_count());
  if (dim > RestrictedSpace10::kMaxDimension) {
    throw std::length_error("computational subspace has " + std::to_string(dim) + " states (limit " +
                            std::to_string(RestrictedSpace10::kMaxDimension) + ")");
  }
  return Combinadic(chain.length(), chain.gate_count());
}

}  // namespace

RestrictedSpace10::RestrictedSpace10(const Chain10& chain)
    : chain_(chain), combinadic_(checked_combinadic(chain)) {
  initial_index_ = index(initial_config(chain_));
  const std::size_t dim = dimension();
  prefixes_.resize(dim);
  done_.resize(dim);
  const int relevant = chain_.program_length();
  for (std::size_t i = 0; i < dim; ++i) {
    const GateConfig c = config(i);
    prefixes_[i] = config_prefix_length(chain_, c);
    done_[i] = c.position(relevant) <= chain_.work_offset() ? 1 : 0;
  }
}

GateConfig RestrictedSpace10::config(std::size_t index) const {
  return GateConfig(chain_.length(), combinadic_.unrank(index));
}

std::size_t RestrictedSpace10::index(const GateConfig& config) const {
  return static_cast<std::size_t>(combinadic_.rank(config.positions()));
}

Eigen::SparseMatrix<double> RestrictedSpace10::hamiltonian() const {
  const std::size_t dim = dimension();
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t i = 0; i < dim; ++i) {
    const GateConfig c = config(i);
    for (const Move& mv : applicable_moves(c)) {
      entries.emplace_back(static_cast<int>(index(apply_move(c, mv))), static_cast<int>(i), -1.0);
    }
  }
  Eigen::SparseMatrix<double> h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

Eigen::SparseMatrix<double> restricted_hamiltonian(const Chain10& chain) {
  return RestrictedSpace10(chain).hamiltonian();
}

// ---------------------------------------------------------------------------
// RestrictedEvolution10

RestrictedEvolution10::RestrictedEvolution10(const Chain10& chain)
    : space_(std::make_shared<RestrictedSpace10>(chain)) {
  const std::size_t dim = space_->dimension();
  if (dim > kMaxDenseDimension) {
    throw std::length_error("restricted evolution needs a dense " + std::to_string(dim) +
                            "-dimensional diagonalization (limit " + std::to_string(kMaxDenseDimension) + ")");
  }
  hamiltonian_ = space_->hamiltonian();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver{Eigen::MatrixXd(hamiltonian_)};
  if (solver.info() != Eigen::Success) throw std::runtime_error("restricted Hamiltonian diagonalization failed");
  energies_ = solver.eigenvalues();
  modes_ = solver.eigenvectors();
  for (int p = 0; p <= chain.gate_count(); ++p) {
    work_states_.push_back(work_state_after(chain, p));
    work_sigma_z_.push_back(output_sigma_z(work_states_.back(), chain.n_qubits()));
  }
}

RestrictedState10 RestrictedEvolution10::initial_state() const {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space_->dimension()));
  amps(static_cast<Eigen::Index>(space_->initial_index())) = 1.0;
  return {space_, std::move(amps)};
}

RestrictedState10 RestrictedEvolution10::evolve(const RestrictedState10& state, double tau) const {
  if (state.amplitudes.size() != static_cast<Eigen::Index>(space_->dimension())) {
    throw std::invalid_argument("evolve: amplitude vector does not match the basis");
  }
  if (!(tau >= 0.0)) throw std::invalid_argument("evolve: tau must be >= 0");
  if (tau == 0.0) return state;
  Eigen::VectorXcd coeffs = modes_.transpose().cast<Complex>() * state.amplitudes;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) coeffs(j) *= std::polar(1.0, -energies_(j) * tau);
  return {space_, modes_.cast<Complex>() * coeffs};
}

RestrictedState10 RestrictedEvolution10::evolve_initial(double tau) const {
  if (!(tau >= 0.0)) throw std::invalid_argument("evolve: tau must be >= 0");
  if (tau == 0.0) return initial_state();
  const auto row = modes_.row(static_cast<Eigen::Index>(space_->initial_index()));
  Eigen::VectorXcd coeffs(row.size());
  for (Eigen::Index j = 0; j < row.size(); ++j) coeffs(j) = row(j) * std::polar(1.0, -energies_(j) * tau);
  return {space_, modes_.cast<Complex>() * coeffs};
}

double RestrictedEvolution10::success_probability(const RestrictedState10& state) const {
  double p = 0.0;
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    if (space_->done(static_cast<std::size_t>(i))) p += std::norm(state.amplitudes(i));
  }
  return p;
}

double RestrictedEvolution10::sigma_z(const RestrictedState10& state) const {
  // Distinct configurations have orthogonal program registers, so the
  // expectation is diagonal in the basis; equal prefixes share work states.
  std::vector<double> weight(work_sigma_z_.size(), 0.0);
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    weight[static_cast<std::size_t>(space_->prefix_length(static_cast<std::size_t>(i)))] +=
        std::norm(state.amplitudes(i));
  }
  double s = 0.0;
  for (std::size_t p = 0; p < weight.size(); ++p) s += weight[p] * work_sigma_z_[p];
  return s;
}

double RestrictedEvolution10::energy(const RestrictedState10& state) const {
  const Eigen::VectorXcd h_psi = hamiltonian_.cast<Complex>() * state.amplitudes;
  return state.amplitudes.dot(h_psi).real();
}

RestrictedState10 evolve_restricted(const RestrictedEvolution10& evolution, const RestrictedState10& state,
                                    double tau) {
  return evolution.evolve(state, tau);
}

double success_probability_exact(const Chain10& chain, double tau) {
  const RestrictedEvolution10 evolution(chain);
  return evolution.success_probability(evolution.evolve_initial(tau));
}

double sigma_z_expectation(const Chain10& chain, double tau) {
  const RestrictedEvolution10 evolution(chain);
  return evolution.sigma_z(evolution.evolve_initial(tau));
}

}  // namespace hqca
