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
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hqca/hqca20.hpp"

namespace hqca {
namespace {

Circuit ws3_circuit() { return Circuit(3, {{Gate::W, Gate::S}, {Gate::S, Gate::W}}); }

const StateLine20& ws3_line() {
  static const StateLine20 line =
      generate_line(build_initial_state20(ws3_circuit(), std::vector<int>{1, 1, 0}, false));
  return line;
}

const StateLine20& padded_line() {
  static const StateLine20 line =
      generate_line(build_initial_state20(ws3_circuit(), std::vector<int>{1, 1, 0}, true));
  return line;
}

TEST(Symbols, TenSymbolsRoundTrip) {
  const std::string all = "WSIwsi+><.";
  const auto parsed = parse_program20(all);
  ASSERT_EQ(parsed.size(), static_cast<std::size_t>(kProgram20Count));
  EXPECT_EQ(program20_string(parsed), all);
  int marked_count = 0;
  for (Program20 p : parsed) {
    if (is_marked_gate(p)) {
      ++marked_count;
      EXPECT_EQ(marked(unmarked(p)), p);
    }
  }
  EXPECT_EQ(marked_count, 3);
  EXPECT_THROW(parse_program20("x"), std::invalid_argument);
}

TEST(Layout, Lengths) {
  EXPECT_EQ(Layout20::make(2, 1, false).length, 5);
  EXPECT_EQ(Layout20::make(3, 2, false).length, 14);
  const auto padded = Layout20::make(3, 2, true);
  EXPECT_EQ(padded.sequences, 12);
  EXPECT_EQ(padded.length, 94);
  EXPECT_EQ(padded.readout_site(), 86);
  const auto plain = Layout20::make(3, 2, false);
  std::vector<int> markers;
  for (int s = 1; s <= plain.length; ++s)
    if (plain.is_marker(s)) markers.push_back(s);
  EXPECT_EQ(markers, (std::vector<int>{2, 6, 10, 14}));
  EXPECT_EQ(plain.work_offset(), 6);
}

TEST(Initial, Ws3State) {
  const auto psi0 = build_initial_state20(ws3_circuit(), std::vector<int>{1, 1, 0}, false);
  EXPECT_EQ(psi0.program_string(), "......IWSIISW<");
  EXPECT_EQ(psi0.data_string(), "010001www10001");
  EXPECT_EQ(psi0.work_index(7), 1);
  EXPECT_EQ(psi0.work_index(9), 3);
  EXPECT_EQ(psi0.work_index(10), 0);
}

TEST(Initial, PaddedProgram) {
  const auto psi0 = build_initial_state20(ws3_circuit(), std::vector<int>{0, 0, 0}, true);
  const std::string p = psi0.program_string();
  ASSERT_EQ(p.size(), 94u);
  EXPECT_EQ(p.back(), '<');
  // The two rounds, then 10 identity sequences, each led by a doubled I.
  std::string program = "IWSIISW";
  for (int k = 0; k < 10; ++k) program += "IIII";
  EXPECT_EQ(p, std::string(94 - 1 - program.size(), '.') + program + "<");
}

TEST(Step, FirstRuleAtStart) {
  const auto& line = ws3_line();
  const auto matches = forward_matches(line.states[0]);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].rule, Rule20::R1);
  EXPECT_EQ(matches[0].bond, 13);
  EXPECT_EQ(line.states[1].program_string(), "......IWSIISw.");
}

TEST(Step, TwelveStepsReachPrintedState) {
  const auto& line = ws3_line();
  const auto& psi12 = line.states[12];
  EXPECT_EQ(psi12.program_string(), ".....IWS+IISW.");
  EXPECT_EQ(psi12.data_string(), "010001www10001");
  std::vector<Rule20> expected{Rule20::R1};
  for (int i = 0; i < 6; ++i) expected.push_back(Rule20::R2);
  expected.insert(expected.end(), {Rule20::R3, Rule20::R4a, Rule20::R5a, Rule20::R5a, Rule20::R5a});
  for (int t = 0; t < 12; ++t) EXPECT_EQ(line.rules[static_cast<std::size_t>(t)].rule, expected[static_cast<std::size_t>(t)]) << t;
  const auto in = QubitState::basis("110");
  const auto expected_work = apply_two_qubit_gate(Gate::S, apply_two_qubit_gate(Gate::W, in, 1), 2);
  EXPECT_NEAR(fidelity(psi12.work, expected_work), 1.0, 1e-10);
}

TEST(Line, FinalStateAndLength) {
  const auto& line = ws3_line();
  EXPECT_EQ(line.final_index(), 93);
  const auto& end = line.states.back();
  EXPECT_EQ(end.program_string(), "<IWSIISW......");
  EXPECT_EQ(end.data_string(), "010001www10001");
  EXPECT_FALSE(step_forward(end).has_value());
  EXPECT_GE(fidelity(end.work, simulate_circuit(ws3_circuit(), QubitState::basis("110"))), 1.0 - 1e-10);
}

TEST(Line, SmallestInstance) {
  const auto line = generate_line(build_initial_state20(Circuit(2, {{Gate::W}}), std::vector<int>{1, 0}, false));
  EXPECT_EQ(line.layout().length, 5);
  EXPECT_EQ(line.final_index(), 10);
}

TEST(Line, DeterministicBothWays) {
  for (const StateLine20* line : {&ws3_line(), &padded_line()}) {
    const int t_end = line->final_index();
    for (int t = 0; t <= t_end; ++t) {
      const auto& psi = line->states[static_cast<std::size_t>(t)];
      EXPECT_EQ(forward_matches(psi).size(), t < t_end ? 1u : 0u) << t;
      EXPECT_EQ(backward_matches(psi).size(), t > 0 ? 1u : 0u) << t;
    }
  }
}

TEST(Line, BackwardInvertsForward) {
  const auto& line = ws3_line();
  EXPECT_FALSE(step_backward(line.states[0]).has_value());
  for (int t = 0; t < line.final_index(); ++t) {
    const auto fwd = step_forward(line.states[static_cast<std::size_t>(t)]);
    ASSERT_TRUE(fwd.has_value());
    const auto back = step_backward(fwd->state);
    ASSERT_TRUE(back.has_value());
    EXPECT_TRUE(back->state.same_configuration(line.states[static_cast<std::size_t>(t)]));
    EXPECT_NEAR(fidelity(back->state.work, line.states[static_cast<std::size_t>(t)].work), 1.0, 1e-12);
  }
}

TEST(Line, WalkBackFromTwelve) {
  ChainState20 psi = ws3_line().states[12];
  for (int i = 0; i < 12; ++i) psi = step_backward(psi)->state;
  EXPECT_TRUE(psi.same_configuration(ws3_line().states[0]));
  EXPECT_GE(fidelity(psi.work, QubitState::basis("110")), 1.0 - 1e-10);
}

TEST(Line, MarkersNeverChange) {
  for (const StateLine20* line : {&ws3_line(), &padded_line()}) {
    const auto& first = line->states.front();
    for (const auto& psi : line->states) {
      EXPECT_EQ(psi.data, first.data);
      for (int s = 1; s <= psi.layout.length; ++s)
        if (psi.layout.is_marker(s)) {
          EXPECT_EQ(psi.bit(s), 1);
        }
    }
  }
}

TEST(Line, WorkRegisterMatchesReplay) {
  const auto& line = padded_line();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, line.final_index());
  for (int i = 0; i < 10; ++i) {
    const int t = pick(rng);
    EXPECT_GE(fidelity(replay_work_register(line, t), line.states[static_cast<std::size_t>(t)].work), 1.0 - 1e-12) << t;
  }
}

TEST(Line, RuleSixReadsTheExpectedBits) {
  EXPECT_EQ(check_rule6_bits(ws3_line()), 5);
  EXPECT_GT(check_rule6_bits(padded_line()), 5);
}

TEST(Line, PrintedRuleSixSiteStalls) {
  const auto psi0 = build_initial_state20(ws3_circuit(), std::vector<int>{1, 1, 0}, false);
  const RuleTable20 printed = RuleTable20::as_printed();
  ChainState20 psi = psi0;
  int t = 0;
  while (auto next = step_forward(psi, printed)) {
    psi = next->state;
    ++t;
  }
  EXPECT_EQ(t, 16);
  EXPECT_THROW(generate_line(psi0, printed), MalformedState);
}

TEST(Line, TwoActiveSymbolsAreRejected) {
  ChainState20 psi = ws3_line().states[12];
  psi.program[13] = Program20::Turn;
  EXPECT_THROW(step_forward(psi), MalformedState);
}

TEST(Hamiltonian20, TridiagonalPath) {
  const auto& line = ws3_line();
  const Eigen::MatrixXd h = Eigen::MatrixXd(restricted_hamiltonian20(line));
  const int n = line.final_index() + 1;
  ASSERT_EQ(h.rows(), n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) EXPECT_EQ(h(i, j), std::abs(i - j) == 1 ? -1.0 : 0.0);
    EXPECT_EQ(h.row(i).sum(), (i == 0 || i == n - 1) ? -1.0 : -2.0);
  }
  EXPECT_NO_THROW(restricted_hamiltonian20(padded_line()));
}

TEST(Readout, PaddedEvent) {
  const auto& line = padded_line();
  EXPECT_EQ(line.final_index(), 4413);
  EXPECT_EQ(line.layout().length, 94);
  EXPECT_GE(fidelity(line.states.back().work, simulate_circuit(ws3_circuit(), QubitState::basis("110"))),
            1.0 - 1e-10);
  const auto event = readout_event(line);
  EXPECT_EQ(event.site, 86);
  EXPECT_EQ(event.first_cleared, 777);
  EXPECT_EQ(event.sixth, 735);
  // The cleared states form {t >= 777}, which is not {t > floor(T/6)}.
  EXPECT_FALSE(event.matches_sixth());
  for (int t = 0; t <= line.final_index(); ++t) {
    const bool cleared = line.states[static_cast<std::size_t>(t)].symbol(event.site) == Program20::Empty;
    EXPECT_EQ(cleared, t >= event.first_cleared) << t;
  }
}

TEST(Readout, ZeroBudgetAndUnpadded) {
  const auto r = readout(padded_line(), 0.0, 8, 1);
  EXPECT_EQ(r.p_bullet, 0.0);
  EXPECT_TRUE(std::isnan(r.samples[0].p_out1()));
  EXPECT_THROW(readout(ws3_line(), 10.0, 8, 1), std::invalid_argument);
}

TEST(Readout, ConditionalOutputMatchesCircuit) {
  const auto& line = padded_line();
  const double direct = probability_one(simulate_circuit(ws3_circuit(), QubitState::basis("110")), 3);
  const auto r = readout(line, 2000.0, 64, 3);
  EXPECT_GT(r.p_bullet, 0.0);
  for (const auto& s : r.samples)
    if (s.p_bullet > 1e-6) {
      EXPECT_NEAR(s.p_out1(), direct, 1e-8);
    }
}

TEST(Readout, NontrivialOutputDistribution) {
  for (const char* bits : {"100", "111", "011"}) {
    const auto in = QubitState::basis(bits);
    const auto line = generate_line(build_initial_state20(ws3_circuit(), std::vector<int>{bits[0] - '0', bits[1] - '0', bits[2] - '0'}, true));
    const double direct = probability_one(simulate_circuit(ws3_circuit(), in), 3);
    const auto r = readout(line, 10.0 * (line.final_index() + 1) * std::log(line.final_index() + 1.0), 200, 1);
    EXPECT_NEAR(r.p_out1, direct, 1e-8) << bits;
  }
}

}  // namespace
}  // namespace hqca
