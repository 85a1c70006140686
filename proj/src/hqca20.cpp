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

#include "hqca/hqca20.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "hqca/sampling.hpp"
#include "hqca/walk.hpp"

namespace hqca {

namespace {

constexpr double kLineAmplitudeTolerance = 1e-12;
constexpr double kFinishedFidelity = 1.0 - 1e-10;

std::string where(const ChainState20& state) {
  return state.program_string() + " / " + state.data_string();
}

// Columns of the 4x4 gate that a classical or mixed data pair can reach.
// `left`/`right` are 0/1, or kWorkSlot for a free qubit.
bool acts_as_identity(const Eigen::Matrix4cd& u, int left, int right) {
  std::vector<int> columns;
  for (int a = 0; a < 2; ++a) {
    if (left != kWorkSlot && a != left) continue;
    for (int b = 0; b < 2; ++b) {
      if (right != kWorkSlot && b != right) continue;
      columns.push_back(2 * a + b);
    }
  }
  for (int c : columns) {
    for (int r = 0; r < 4; ++r) {
      const Complex expected = (r == c) ? Complex(1.0) : Complex(0.0);
      if (std::abs(u(r, c) - expected) > 1e-14) return false;
    }
  }
  return true;
}

int projector_bit(const ChainState20& state, int bond, BitSite site, Rule20 rule) {
  const int s = site == BitSite::Left ? bond : bond + 1;
  const int bit = state.bit(s);
  if (bit == kWorkSlot) {
    throw MalformedState(std::string("rule ") + rule20_name(rule) + " projector reads work qubit at site " +
                         std::to_string(s) + " in " + where(state));
  }
  return bit;
}

// Symbols after applying `match` forwards (or backwards) to the bond.
struct Rewrite {
  Program20 left;
  Program20 right;
};

Rewrite forward_rewrite(const ChainState20& s, const RuleMatch& m) {
  const Program20 a = s.symbol(m.bond);
  const Program20 b = s.symbol(m.bond + 1);
  switch (m.rule) {
    case Rule20::R1:
      return {marked(a), Program20::Empty};
    case Rule20::R2:
      return {marked(a), unmarked(b)};
    case Rule20::R3:
      return {Program20::Turn, unmarked(b)};
    case Rule20::R4a:
      return {Program20::Empty, Program20::Apply};
    case Rule20::R4b:
      return {Program20::Empty, Program20::Shift};
    case Rule20::R5a:
      return {b, Program20::Apply};
    case Rule20::R5b:
      return {b, Program20::Shift};
    case Rule20::R6a:
    case Rule20::R6b:
      return {Program20::Turn, Program20::Empty};
  }
  throw std::logic_error("unknown rule");
}

Rewrite backward_rewrite(const ChainState20& s, const RuleMatch& m) {
  const Program20 a = s.symbol(m.bond);
  const Program20 b = s.symbol(m.bond + 1);
  switch (m.rule) {
    case Rule20::R1:
      return {unmarked(a), Program20::Turn};
    case Rule20::R2:
      return {unmarked(a), marked(b)};
    case Rule20::R3:
      return {Program20::Empty, marked(b)};
    case Rule20::R4a:
    case Rule20::R4b:
      return {Program20::Empty, Program20::Turn};
    case Rule20::R5a:
      return {Program20::Apply, a};
    case Rule20::R5b:
      return {Program20::Shift, a};
    case Rule20::R6a:
      return {Program20::Apply, Program20::Empty};
    case Rule20::R6b:
      return {Program20::Shift, Program20::Empty};
  }
  throw std::logic_error("unknown rule");
}

std::string describe(const std::vector<RuleMatch>& matches) {
  std::string s;
  for (const auto& m : matches) {
    if (!s.empty()) s += ", ";
    s += std::string(rule20_name(m.rule)) + "@" + std::to_string(m.bond);
  }
  return s;
}

Step20 apply_match(const ChainState20& state, const RuleMatch& match, bool forward) {
  Step20 step{state, match, std::nullopt};
  const Rewrite r = forward ? forward_rewrite(state, match) : backward_rewrite(state, match);
  step.state.program[static_cast<std::size_t>(match.bond - 1)] = r.left;
  step.state.program[static_cast<std::size_t>(match.bond)] = r.right;
  if (match.rule != Rule20::R5a) return step;

  // The gate is the plain symbol that ends up left of the apply symbol
  // going forwards, or sits left of it before going backwards.
  const Gate gate = gate_of(forward ? r.left : state.symbol(match.bond));
  const int left = state.bit(match.bond);
  const int right = state.bit(match.bond + 1);
  if (left == kWorkSlot && right == kWorkSlot) {
    const int q = state.work_index(match.bond);
    const Eigen::Matrix4cd u = forward ? gate_matrix(gate) : Eigen::Matrix4cd(gate_matrix(gate).adjoint());
    apply_two_qubit_unitary(u, step.state.work, q);
    step.work_gate = WorkGate{gate, q};
    return step;
  }
  if (!acts_as_identity(gate_matrix(gate), left, right)) {
    throw MalformedState(std::string("gate ") + gate_symbol(gate) + " would change marker data at sites " +
                         std::to_string(match.bond) + "," + std::to_string(match.bond + 1) + " in " +
                         where(state));
  }
  return step;
}

std::optional<Step20> unique_step(const ChainState20& state, const std::vector<RuleMatch>& matches, bool forward) {
  if (matches.empty()) return std::nullopt;
  if (matches.size() > 1) {
    throw MalformedState(std::string(forward ? "forward" : "backward") + " rules " + describe(matches) +
                         " all apply to " + where(state));
  }
  return apply_match(state, matches.front(), forward);
}

}  // namespace

// ---------------------------------------------------------------------------
// Symbols

char program20_char(Program20 p) {
  static constexpr char kChars[] = {'W', 'S', 'I', 'w', 's', 'i', '+', '>', '<', '.'};
  return kChars[static_cast<int>(p)];
}

std::string program20_string(std::span<const Program20> program) {
  std::string s;
  s.reserve(program.size());
  for (Program20 p : program) s.push_back(program20_char(p));
  return s;
}

std::vector<Program20> parse_program20(std::string_view text) {
  std::vector<Program20> out;
  for (char ch : text) {
    bool found = false;
    for (int i = 0; i < kProgram20Count; ++i) {
      if (program20_char(static_cast<Program20>(i)) == ch) {
        out.push_back(static_cast<Program20>(i));
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument(std::string("unknown program symbol '") + ch + "'");
  }
  return out;
}

bool is_plain_gate(Program20 p) { return p == Program20::W || p == Program20::S || p == Program20::I; }

bool is_marked_gate(Program20 p) {
  return p == Program20::WMarked || p == Program20::SMarked || p == Program20::IMarked;
}

Program20 marked(Program20 plain) {
  if (!is_plain_gate(plain)) throw std::invalid_argument("marked: not a plain gate symbol");
  return static_cast<Program20>(static_cast<int>(plain) + 3);
}

Program20 unmarked(Program20 mark) {
  if (!is_marked_gate(mark)) throw std::invalid_argument("unmarked: not a marked gate symbol");
  return static_cast<Program20>(static_cast<int>(mark) - 3);
}

Program20 program_symbol20(Gate gate) {
  switch (gate) {
    case Gate::W:
      return Program20::W;
    case Gate::S:
      return Program20::S;
    case Gate::I:
      return Program20::I;
  }
  return Program20::I;
}

Gate gate_of(Program20 p) {
  switch (p) {
    case Program20::W:
    case Program20::WMarked:
      return Gate::W;
    case Program20::S:
    case Program20::SMarked:
      return Gate::S;
    case Program20::I:
    case Program20::IMarked:
      return Gate::I;
    default:
      throw std::invalid_argument(std::string("gate_of: '") + program20_char(p) + "' is not a gate");
  }
}

const char* rule20_name(Rule20 rule) {
  static constexpr const char* kNames[] = {"1", "2", "3", "4a", "4b", "5a", "5b", "6a", "6b"};
  return kNames[static_cast<int>(rule)];
}

// ---------------------------------------------------------------------------
// Layout and states

Layout20 Layout20::make(int n_qubits, int rounds, bool padded) {
  if (n_qubits < 2 || rounds < 1) throw std::invalid_argument("Layout20 needs N >= 2 and K >= 1");
  Layout20 l;
  l.n_qubits = n_qubits;
  l.rounds = rounds;
  l.sequences = padded ? 6 * rounds : rounds;
  l.length = (2 * l.sequences - 1) * (n_qubits + 1) + 2;
  l.padded = padded;
  return l;
}

bool Layout20::is_marker(int site) const {
  const int offset = site - 2;
  return offset >= 0 && offset % (n_qubits + 1) == 0 && offset / (n_qubits + 1) < 2 * sequences;
}

int ChainState20::work_index(int site) const {
  const int n = site - layout.work_offset();
  return (n >= 1 && n <= layout.n_qubits) ? n : 0;
}

std::string ChainState20::data_string() const {
  std::string s;
  s.reserve(data.size());
  for (auto b : data) s.push_back(b == kWorkSlot ? 'w' : static_cast<char>('0' + b));
  return s;
}

bool ChainState20::same_configuration(const ChainState20& other) const {
  return program == other.program && data == other.data;
}

ChainState20 build_initial_state20(const Circuit& circuit, std::span<const int> input_bits, bool padded) {
  const int n = circuit.n_qubits();
  if (static_cast<int>(input_bits.size()) != n) {
    throw std::invalid_argument("input has " + std::to_string(input_bits.size()) + " bits, circuit has " +
                                std::to_string(n) + " qubits");
  }
  const Layout20 layout = Layout20::make(n, circuit.n_rounds(), padded);

  std::vector<Program20> seq{Program20::I};
  for (int k = 1; k <= layout.sequences; ++k) {
    if (k > 1) seq.insert(seq.end(), {Program20::I, Program20::I});
    for (int g = 1; g <= n - 1; ++g) {
      seq.push_back(k <= circuit.n_rounds() ? program_symbol20(circuit.gate(k, g)) : Program20::I);
    }
  }

  std::vector<Program20> program(static_cast<std::size_t>(layout.length), Program20::Empty);
  const int first = layout.length - static_cast<int>(seq.size());  // 1-based site of the program's first gate
  for (std::size_t i = 0; i < seq.size(); ++i) program[static_cast<std::size_t>(first - 1) + i] = seq[i];
  program.back() = Program20::Turn;

  std::vector<std::int8_t> data(static_cast<std::size_t>(layout.length), 0);
  for (int site = 1; site <= layout.length; ++site) {
    if (layout.is_marker(site)) data[static_cast<std::size_t>(site - 1)] = 1;
  }
  for (int q = 1; q <= n; ++q) data[static_cast<std::size_t>(layout.work_offset() + q - 1)] = kWorkSlot;

  return ChainState20{layout, std::move(program), std::move(data), QubitState::basis(input_bits)};
}

// ---------------------------------------------------------------------------
// Rules

std::vector<RuleMatch> forward_matches(const ChainState20& state, const RuleTable20& table) {
  std::vector<RuleMatch> out;
  const int length = state.layout.length;
  for (int j = 1; j < length; ++j) {
    const Program20 a = state.symbol(j);
    const Program20 b = state.symbol(j + 1);
    if (is_plain_gate(a) && b == Program20::Turn) out.push_back({Rule20::R1, j});
    if (is_plain_gate(a) && is_marked_gate(b)) out.push_back({Rule20::R2, j});
    if (a == Program20::Empty && is_marked_gate(b)) out.push_back({Rule20::R3, j});
    if (a == Program20::Empty && b == Program20::Turn) {
      out.push_back({projector_bit(state, j, table.rule4, Rule20::R4a) == 1 ? Rule20::R4a : Rule20::R4b, j});
    }
    if (a == Program20::Apply && is_plain_gate(b)) out.push_back({Rule20::R5a, j});
    if (a == Program20::Shift && is_plain_gate(b)) out.push_back({Rule20::R5b, j});
    if (a == Program20::Apply && b == Program20::Empty &&
        projector_bit(state, j, table.rule6, Rule20::R6a) == 1) {
      out.push_back({Rule20::R6a, j});
    }
    if (a == Program20::Shift && b == Program20::Empty &&
        projector_bit(state, j, table.rule6, Rule20::R6b) == 0) {
      out.push_back({Rule20::R6b, j});
    }
  }
  return out;
}

std::vector<RuleMatch> backward_matches(const ChainState20& state, const RuleTable20& table) {
  std::vector<RuleMatch> out;
  const int length = state.layout.length;
  for (int j = 1; j < length; ++j) {
    const Program20 a = state.symbol(j);
    const Program20 b = state.symbol(j + 1);
    if (is_marked_gate(a) && b == Program20::Empty) out.push_back({Rule20::R1, j});
    if (is_marked_gate(a) && is_plain_gate(b)) out.push_back({Rule20::R2, j});
    if (a == Program20::Turn && is_plain_gate(b)) out.push_back({Rule20::R3, j});
    if (a == Program20::Empty && b == Program20::Apply &&
        projector_bit(state, j, table.rule4, Rule20::R4a) == 1) {
      out.push_back({Rule20::R4a, j});
    }
    if (a == Program20::Empty && b == Program20::Shift &&
        projector_bit(state, j, table.rule4, Rule20::R4b) == 0) {
      out.push_back({Rule20::R4b, j});
    }
    if (is_plain_gate(a) && b == Program20::Apply) out.push_back({Rule20::R5a, j});
    if (is_plain_gate(a) && b == Program20::Shift) out.push_back({Rule20::R5b, j});
    if (a == Program20::Turn && b == Program20::Empty) {
      out.push_back({projector_bit(state, j, table.rule6, Rule20::R6a) == 1 ? Rule20::R6a : Rule20::R6b, j});
    }
  }
  return out;
}

std::optional<Step20> step_forward(const ChainState20& state, const RuleTable20& table) {
  return unique_step(state, forward_matches(state, table), true);
}

std::optional<Step20> step_backward(const ChainState20& state, const RuleTable20& table) {
  return unique_step(state, backward_matches(state, table), false);
}

// ---------------------------------------------------------------------------
// The line

StateLine20 generate_line(const ChainState20& psi0, const RuleTable20& table) {
  const Layout20& layout = psi0.layout;
  const long long cap =
      100LL * (layout.sequences + 1) * (layout.sequences + 1) * (layout.n_qubits + 1) * (layout.n_qubits + 1);

  StateLine20 line{{psi0}, {}, {}, psi0.work};
  std::unordered_set<std::string> seen{psi0.program_string()};
  while (auto step = step_forward(line.states.back(), table)) {
    if (static_cast<long long>(line.rules.size()) >= cap) {
      throw MalformedState("line exceeds " + std::to_string(cap) + " steps");
    }
    if (!seen.insert(step->state.program_string()).second) {
      throw MalformedState("program register repeats at t = " + std::to_string(line.rules.size() + 1) + ": " +
                           step->state.program_string());
    }
    line.rules.push_back(step->match);
    line.work_gates.push_back(step->work_gate);
    line.states.push_back(std::move(step->state));
  }

  // Expected final layout: turn, the program unchanged, empty fill.
  std::vector<Program20> gates;
  for (Program20 p : psi0.program) {
    if (is_plain_gate(p)) gates.push_back(p);
  }
  const ChainState20& last = line.states.back();
  bool ok = last.symbol(1) == Program20::Turn;
  for (int site = 2; ok && site <= layout.length; ++site) {
    const std::size_t i = static_cast<std::size_t>(site - 2);
    ok = last.symbol(site) == (i < gates.size() ? gates[i] : Program20::Empty);
  }
  if (!ok) {
    throw MalformedState("line stopped at t = " + std::to_string(line.final_index()) +
                         " in a state that is not the final layout: " + where(last));
  }
  return line;
}

QubitState replay_work_register(const StateLine20& line, int t) {
  if (t < 0 || t > line.final_index()) throw std::out_of_range("replay_work_register: t out of range");
  QubitState state = line.input;
  for (int s = 0; s < t; ++s) {
    if (const auto& g = line.work_gates[static_cast<std::size_t>(s)]) {
      state = apply_two_qubit_gate(g->gate, state, g->left_qubit);
    }
  }
  return state;
}

Eigen::SparseMatrix<double> restricted_hamiltonian20(const StateLine20& line, const RuleTable20& table) {
  const int last = line.final_index();
  auto check_image = [&](const std::optional<Step20>& image, int t, int target, const char* dir) {
    if (target < 0 || target > last) {
      if (image) {
        throw StructuralViolation(std::string(dir) + " image of psi_" + std::to_string(t) + " leaves the line");
      }
      return;
    }
    if (!image) {
      throw StructuralViolation(std::string("no ") + dir + " image for psi_" + std::to_string(t));
    }
    const ChainState20& expected = line.states[static_cast<std::size_t>(target)];
    const double dev = (image->state.work.amplitudes() - expected.work.amplitudes()).cwiseAbs().maxCoeff();
    if (!image->state.same_configuration(expected) || dev > kLineAmplitudeTolerance) {
      throw StructuralViolation(std::string(dir) + " image of psi_" + std::to_string(t) + " is not psi_" +
                                std::to_string(target));
    }
  };

  std::vector<Eigen::Triplet<double>> entries;
  for (int t = 0; t <= last; ++t) {
    const ChainState20& s = line.states[static_cast<std::size_t>(t)];
    std::optional<Step20> fwd;
    std::optional<Step20> bwd;
    try {
      fwd = step_forward(s, table);
      bwd = step_backward(s, table);
    } catch (const MalformedState& e) {
      throw StructuralViolation("psi_" + std::to_string(t) + ": " + e.what());
    }
    check_image(fwd, t, t + 1, "forward");
    check_image(bwd, t, t - 1, "backward");
    if (t < last) {
      entries.emplace_back(t, t + 1, -1.0);
      entries.emplace_back(t + 1, t, -1.0);
    }
  }
  Eigen::SparseMatrix<double> h(last + 1, last + 1);
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

int check_rule6_bits(const StateLine20& line, const RuleTable20& table) {
  int checked = 0;
  for (std::size_t t = 0; t < line.states.size(); ++t) {
    const ChainState20& s = line.states[t];
    for (int j = 1; j < s.layout.length; ++j) {
      const Program20 a = s.symbol(j);
      if (s.symbol(j + 1) != Program20::Empty || (a != Program20::Apply && a != Program20::Shift)) continue;
      const int bit = projector_bit(s, j, table.rule6, a == Program20::Apply ? Rule20::R6a : Rule20::R6b);
      const int expected = a == Program20::Apply ? 1 : 0;
      if (bit != expected) {
        throw MalformedState("psi_" + std::to_string(t) + ": '" + program20_char(a) + "' reaches the program end over bit " +
                             std::to_string(bit));
      }
      ++checked;
    }
  }
  return checked;
}

// ---------------------------------------------------------------------------
// Readout

ReadoutEvent20 readout_event(const StateLine20& line) {
  ReadoutEvent20 ev;
  ev.site = line.layout().readout_site();
  ev.sixth = line.final_index() / 6;
  const int last = line.final_index();
  int first = -1;
  for (int t = 0; t <= last; ++t) {
    const bool cleared = line.states[static_cast<std::size_t>(t)].symbol(ev.site) == Program20::Empty;
    if (cleared && first < 0) first = t;
    if (!cleared && first >= 0) {
      throw std::logic_error("readout site " + std::to_string(ev.site) + " refills at t = " + std::to_string(t));
    }
  }
  if (first < 0) throw std::logic_error("readout site " + std::to_string(ev.site) + " is never cleared");
  ev.first_cleared = first;
  const QubitState& done = line.states.back().work;
  for (int t = first; t <= last; ++t) {
    if (fidelity(line.states[static_cast<std::size_t>(t)].work, done) < kFinishedFidelity) {
      throw std::logic_error("psi_" + std::to_string(t) + " is cleared but the computation is unfinished");
    }
  }
  return ev;
}

double ReadoutSample20::p_out1() const {
  return p_bullet > 0.0 ? p_joint1 / p_bullet : std::numeric_limits<double>::quiet_NaN();
}

Readout20 readout(const StateLine20& line, double tau_max, std::size_t sample_count, std::uint64_t seed,
                  kernels::Exec exec) {
  if (!line.layout().padded) throw std::invalid_argument("readout needs a padded line");
  if (sample_count < 1) throw std::invalid_argument("readout needs at least one sample");
  Readout20 out;
  out.event = readout_event(line);
  out.tau_max = tau_max;

  const int points = line.final_index() + 1;
  const int n_qubits = line.layout().n_qubits;
  std::vector<double> p1(static_cast<std::size_t>(points));
  for (int t = 0; t < points; ++t) p1[static_cast<std::size_t>(t)] = probability_one(line.states[static_cast<std::size_t>(t)].work, n_qubits);

  const WalkSpectrum walk(points);
  const kernels::SineTransformPropagator propagator(walk);
  const auto taus = sample_times(tau_max, sample_count, seed);
  const auto first = static_cast<std::size_t>(out.event.first_cleared);
  out.samples = kernels::map_indexed<ReadoutSample20>(
      sample_count,
      [&](std::size_t i) {
        std::vector<Complex> amp(static_cast<std::size_t>(points));
        propagator.column(1, taus[i], amp);
        ReadoutSample20 s;
        s.tau = taus[i];
        for (std::size_t t = first; t < amp.size(); ++t) {
          const double w = std::norm(amp[t]);
          s.p_bullet += w;
          s.p_joint1 += w * p1[t];
        }
        return s;
      },
      exec);

  std::vector<double> bullets(sample_count), joints(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    bullets[i] = out.samples[i].p_bullet;
    joints[i] = out.samples[i].p_joint1;
  }
  const double sum_bullet = kernels::ordered_sum(bullets);
  out.p_bullet = sum_bullet / static_cast<double>(sample_count);
  out.p_out1 = sum_bullet > 0.0 ? kernels::ordered_sum(joints) / sum_bullet : std::numeric_limits<double>::quiet_NaN();

  const auto pi = limiting_distribution(points, 1);
  out.limiting_p_bullet = tail_mass(pi, out.event.first_cleared);
  return out;
}

}  // namespace hqca
