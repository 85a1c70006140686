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

// The d = 20 automaton. The chain walks deterministically through a line of
// product-like states psi_0 .. psi_T; the Hamiltonian acts on that line as a
// path graph. States are kept as symbol arrays plus the work register.

#ifndef HQCA_HQCA20_HPP
#define HQCA_HQCA20_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "hqca/circuit.hpp"
#include "hqca/kernels.hpp"

namespace hqca {

enum class Program20 : std::uint8_t { W, S, I, WMarked, SMarked, IMarked, Apply, Shift, Turn, Empty };
inline constexpr int kProgram20Count = 10;

/// W S I w s i + > < .   (lower case = marked, '+' apply, '>' shift, '<' turn, '.' empty)
char program20_char(Program20 p);
std::string program20_string(std::span<const Program20> program);
std::vector<Program20> parse_program20(std::string_view text);

bool is_plain_gate(Program20 p);
bool is_marked_gate(Program20 p);
Program20 marked(Program20 plain);
Program20 unmarked(Program20 mark);
Program20 program_symbol20(Gate gate);
Gate gate_of(Program20 p);

/// Which data qubit the projectors of rules 4 and 6 read.
enum class BitSite : std::uint8_t { Left, Right };

struct RuleTable20 {
  BitSite rule4 = BitSite::Right;
  BitSite rule6 = BitSite::Right;

  /// Rule 6 reading the left data qubit, as in the printed projector terms.
  /// The line stalls under this table; kept for fault-injection tests.
  static RuleTable20 as_printed() { return {BitSite::Right, BitSite::Left}; }
};

enum class Rule20 : std::uint8_t { R1, R2, R3, R4a, R4b, R5a, R5b, R6a, R6b };
const char* rule20_name(Rule20 rule);

/// Site layout of a chain with K' gate sequences (K' = K, or 6K padded).
struct Layout20 {
  int n_qubits = 0;
  int rounds = 0;     ///< K of the circuit
  int sequences = 0;  ///< K'
  int length = 0;     ///< (2K' - 1)(N + 1) + 2
  bool padded = false;

  static Layout20 make(int n_qubits, int rounds, bool padded);
  /// Site of w_n is work_offset() + n.
  int work_offset() const { return (sequences - 1) * (n_qubits + 1) + 2; }
  /// Sites (k-1)(N+1)+2, k = 1..2K', hold marker bit 1.
  bool is_marker(int site) const;
  /// L - K(N+1) with the unpadded K.
  int readout_site() const { return length - rounds * (n_qubits + 1); }
};

inline constexpr std::int8_t kWorkSlot = -1;

struct ChainState20 {
  Layout20 layout;
  std::vector<Program20> program;
  std::vector<std::int8_t> data;  ///< 0/1, or kWorkSlot over the work qubits
  QubitState work;

  Program20 symbol(int site) const { return program[static_cast<std::size_t>(site - 1)]; }
  std::int8_t bit(int site) const { return data[static_cast<std::size_t>(site - 1)]; }
  /// n for the site of w_n, 0 elsewhere.
  int work_index(int site) const;
  std::string program_string() const { return program20_string(program); }
  std::string data_string() const;
  /// Program and classical data equal; the work register is not compared.
  bool same_configuration(const ChainState20& other) const;
};

/// Program "I U_1 I I U_2 ... I I U_K" (plus 5K identity sequences when
/// padded) right-aligned against a turn symbol on site L.
ChainState20 build_initial_state20(const Circuit& circuit, std::span<const int> input_bits, bool padded);

/// Zero or several applicable rules where exactly one was expected, a data
/// projector reading a work qubit, or a gate that would alter a marker.
class MalformedState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A local term producing a state off the line.
class StructuralViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RuleMatch {
  Rule20 rule;
  int bond;  ///< left site of the pair, 1-based
  bool operator==(const RuleMatch&) const = default;
};

/// Gate applied to work qubits (left_qubit, left_qubit + 1) by rule 5a.
struct WorkGate {
  Gate gate;
  int left_qubit;
};

struct Step20 {
  ChainState20 state;
  RuleMatch match;
  std::optional<WorkGate> work_gate;
};

/// Every (rule, bond) pair whose left-hand side matches, scanning bonds left
/// to right.
std::vector<RuleMatch> forward_matches(const ChainState20& state, const RuleTable20& table = {});
/// Every (rule, bond) pair whose right-hand side matches.
std::vector<RuleMatch> backward_matches(const ChainState20& state, const RuleTable20& table = {});

/// Unique successor, or nullopt when no rule applies. Throws MalformedState
/// when more than one rule applies.
std::optional<Step20> step_forward(const ChainState20& state, const RuleTable20& table = {});
/// Unique predecessor; rule 5a run backwards applies the inverse gate.
std::optional<Step20> step_backward(const ChainState20& state, const RuleTable20& table = {});

struct StateLine20 {
  std::vector<ChainState20> states;      ///< psi_0 .. psi_T
  std::vector<RuleMatch> rules;          ///< rules[t] maps psi_t to psi_{t+1}
  std::vector<std::optional<WorkGate>> work_gates;  ///< parallel to rules
  QubitState input;

  int final_index() const { return static_cast<int>(states.size()) - 1; }
  const Layout20& layout() const { return states.front().layout; }
};

/// Iterates step_forward to termination. Throws MalformedState on a repeated
/// program register, on exceeding 100 (K'+1)^2 (N+1)^2 steps, or when the
/// final state is not "turn, program, empty fill".
StateLine20 generate_line(const ChainState20& psi0, const RuleTable20& table = {});

/// Work register at step t rebuilt by replaying the logged work gates with
/// the circuit simulator.
QubitState replay_work_register(const StateLine20& line, int t);

/// Checks every forward and backward image against the neighbouring line
/// states and returns the (T+1)x(T+1) matrix with -1 on the off-diagonals.
/// Throws StructuralViolation on any mismatch.
Eigen::SparseMatrix<double> restricted_hamiltonian20(const StateLine20& line, const RuleTable20& table = {});

/// Every occurrence of "apply, empty" sees data bit 1 and every "shift,
/// empty" sees bit 0 under the table's rule 6 site. Returns the number of
/// occurrences checked; throws MalformedState on a violation.
int check_rule6_bits(const StateLine20& line, const RuleTable20& table = {});

/// States whose program qudit at the readout site shows the empty symbol.
struct ReadoutEvent20 {
  int site = 0;
  int first_cleared = 0;  ///< smallest t in the event; the event is {t >= first_cleared}
  int sixth = 0;          ///< floor(T / 6)
  /// Whether {t > floor(T/6)} is the same set.
  bool matches_sixth() const { return first_cleared == sixth + 1; }
};

/// Throws std::logic_error when the cleared states do not form an upper set
/// of the line or when a cleared state does not hold the finished
/// computation.
ReadoutEvent20 readout_event(const StateLine20& line);

struct ReadoutSample20 {
  double tau = 0.0;
  double p_bullet = 0.0;
  double p_joint1 = 0.0;  ///< Pr[readout empty and w_N = 1]
  /// Pr[w_N = 1 | readout empty]; NaN when p_bullet is 0.
  double p_out1() const;
};

struct Readout20 {
  ReadoutEvent20 event;
  double tau_max = 0.0;
  double p_bullet = 0.0;  ///< sample mean
  double p_out1 = 0.0;    ///< ratio of sample means
  double limiting_p_bullet = 0.0;
  std::vector<ReadoutSample20> samples;
};

/// Walks the line from psi_0 for tau ~ Uniform(0, tau_max) and measures the
/// readout qudit, then w_N. Throws std::invalid_argument on unpadded lines.
Readout20 readout(const StateLine20& line, double tau_max, std::size_t sample_count, std::uint64_t seed,
                  kernels::Exec exec = kernels::Exec::OpenMP);

}  // namespace hqca

#endif  // HQCA_HQCA20_HPP
