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
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "hqca/fermion.hpp"
#include "hqca/hqca10.hpp"

namespace hqca {
namespace {

Circuit ws3_circuit() { return Circuit(3, {{Gate::W, Gate::S}, {Gate::S, Gate::W}}); }

std::string program_string(const Chain10& chain, const GateConfig& config) {
  return program10_string(program_register(chain, config));
}

// Moves by direct inspection of the bit string.
std::vector<Move> brute_moves(const std::string& bits) {
  std::vector<Move> out;
  int gate = 0;
  const int n = static_cast<int>(bits.size());
  for (int i = 0; i < n; ++i) {
    if (bits[static_cast<std::size_t>(i)] != '1') continue;
    ++gate;
    if (i > 0 && bits[static_cast<std::size_t>(i - 1)] == '0') out.push_back({gate, Direction::Left});
    if (i + 1 < n && bits[static_cast<std::size_t>(i + 1)] == '0') out.push_back({gate, Direction::Right});
  }
  return out;
}

TEST(Chain10, UnpaddedWs3Layout) {
  const Chain10 chain(ws3_circuit(), {1, 1, 0}, false);
  EXPECT_EQ(chain.length(), 12);
  EXPECT_EQ(chain.gate_count(), 6);
  EXPECT_EQ(chain.work_offset(), 6);
  const auto picture = initial_picture(chain);
  EXPECT_EQ(program10_string(picture.program), "..>..>IWSISW");
  EXPECT_EQ(picture.data, (std::vector<int>{0, 0, 0, 0, 0, 0, 1, 2, 3, 0, 0, 0}));
  EXPECT_EQ(initial_config(chain).bits(), "000000111111");
  EXPECT_EQ(pointer_positions(chain, initial_config(chain)), (std::vector<int>{3, 6}));
}

TEST(Chain10, PaddedWs3Layout) {
  const Chain10 chain(ws3_circuit(), {0, 0, 0}, true, 22);
  EXPECT_EQ(chain.length(), 144);
  EXPECT_EQ(chain.gate_count(), 12);
  EXPECT_EQ(chain.work_offset(), 132);
  const GateConfig d = initial_config(chain);
  EXPECT_EQ(d.weight(), 12);
  for (int m = 1; m <= 12; ++m) EXPECT_EQ(d.position(m), 132 + m);
  const std::string program = program_string(chain, d);
  EXPECT_EQ(program.substr(132), "IWSISWIIIIII");
  EXPECT_EQ(chain.fill_blocks(), 44);
}

TEST(Chain10, SmallestInstance) {
  const Chain10 chain(Circuit(2, {{Gate::W}}), {0, 0}, false);
  EXPECT_EQ(chain.length(), 4);
  EXPECT_EQ(program_string(chain, initial_config(chain)), ".>IW");
  EXPECT_EQ(pointer_positions(chain, initial_config(chain)), std::vector<int>{2});
}

TEST(Moves, InitialWs3StateHasOneMove) {
  const Chain10 chain(ws3_circuit(), {0, 0, 0}, false);
  const auto moves = applicable_moves(initial_config(chain));
  ASSERT_EQ(moves.size(), 1u);
  EXPECT_EQ(moves[0], (Move{1, Direction::Left}));
}

TEST(Moves, ExhaustiveFourBitStrings) {
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::string bits;
    for (int i = 3; i >= 0; --i) bits.push_back((mask >> i) & 1 ? '1' : '0');
    EXPECT_EQ(applicable_moves(GateConfig::from_bits(bits)), brute_moves(bits)) << bits;
  }
  EXPECT_EQ(applicable_moves(GateConfig::from_bits("0101")).size(), 3u);
  for (const auto& m : applicable_moves(GateConfig::from_bits("1100")))
    EXPECT_FALSE(m.gate == 1 && m.direction == Direction::Left);
}

TEST(Moves, RandomWalkInvariants) {
  const Chain10 chain(ws3_circuit(), {1, 0, 1}, true, 3);
  std::vector<Program10> gates;
  for (Gate g : chain.program()) gates.push_back(program_symbol(g));
  std::mt19937_64 rng(2);
  GateConfig d = initial_config(chain);
  for (int step = 0; step < 2000; ++step) {
    const auto moves = applicable_moves(d);
    ASSERT_FALSE(moves.empty());
    const Move mv = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    const GateConfig next = apply_move(d, mv);
    EXPECT_EQ(apply_move(next, inverse(mv)), d);
    d = next;
    const auto program = program_register(chain, d);
    std::vector<Program10> seen;
    for (int site : d.positions()) seen.push_back(program[static_cast<std::size_t>(site - 1)]);
    EXPECT_EQ(seen, gates);
  }
}

TEST(Prefix, Ws3Examples) {
  const Chain10 chain(ws3_circuit(), {1, 1, 0}, false);
  EXPECT_EQ(config_prefix_length(chain, initial_config(chain)), 0);
  // First round (I W S) left of the work qubits, one pointer right of w_N.
  const auto d = GateConfig::from_bits("111000111000");
  EXPECT_EQ(program_string(chain, d), "IWS..>ISW..>");
  EXPECT_EQ(config_prefix_length(chain, d), 3);
  const auto expected = apply_two_qubit_gate(Gate::S, apply_two_qubit_gate(Gate::W, chain.input_state(), 1), 2);
  EXPECT_NEAR(fidelity(work_state_after(chain, 3), expected), 1.0, 1e-12);
  EXPECT_EQ(config_prefix_length(chain, GateConfig::from_bits("111111000000")), 6);
  EXPECT_NEAR(fidelity(work_state_after(chain, 6), simulate_circuit(chain.circuit(), chain.input_state())), 1.0,
              1e-12);
}

TEST(Prefix, ConsistentAcrossEveryEdge) {
  for (bool padded : {false, true}) {
    const Chain10 chain(ws3_circuit(), {0, 1, 1}, padded, 1);
    const RestrictedSpace10 space(chain);
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      const GateConfig d = space.config(i);
      const int p = space.prefix_length(i);
      ASSERT_GE(p, 0);
      ASSERT_LE(p, chain.gate_count());
      for (const Move& mv : applicable_moves(d)) {
        const int q = config_prefix_length(chain, apply_move(d, mv));
        ASSERT_LE(std::abs(p - q), 1);
        if (p != q) {
          EXPECT_EQ(mv.gate, std::max(p, q));
        }
      }
    }
  }
}

TEST(Restricted, MatchesBruteForceAdjacency) {
  const Chain10 chain(Circuit(2, {{Gate::W}}), {0, 0}, false);
  const RestrictedSpace10 space(chain);
  ASSERT_EQ(space.dimension(), 6u);
  const Eigen::MatrixXd h = Eigen::MatrixXd(space.hamiltonian());
  int edges = 0;
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      const std::string x = space.config(a).bits(), y = space.config(b).bits();
      // One adjacent transposition of a 1 and a 0.
      int diffs = 0, first = -1;
      for (int i = 0; i < 4; ++i)
        if (x[static_cast<std::size_t>(i)] != y[static_cast<std::size_t>(i)]) {
          if (first < 0) first = i;
          ++diffs;
        }
      const bool hop = diffs == 2 && (first + 1 < 4) && x[static_cast<std::size_t>(first + 1)] != y[static_cast<std::size_t>(first + 1)];
      EXPECT_EQ(h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), hop ? -1.0 : 0.0);
      edges += hop;
    }
    EXPECT_EQ(h.row(static_cast<Eigen::Index>(a)).sum(), -static_cast<double>(applicable_moves(space.config(a)).size()));
  }
  EXPECT_EQ(edges / 2, 6);
  EXPECT_EQ(Eigen::MatrixXd(restricted_hamiltonian(chain)), h);
}

TEST(Restricted, RankOrderAndInitialIndex) {
  const Chain10 chain(Circuit(2, {{Gate::W}, {Gate::S}}), {0, 0}, true, 2);
  const RestrictedSpace10 space(chain);
  EXPECT_EQ(space.dimension(), binomial(16, 8));
  EXPECT_EQ(space.config(space.initial_index()), initial_config(chain));
  EXPECT_EQ(space.initial_index(), space.dimension() - 1);
  EXPECT_FALSE(space.done(space.initial_index()));
  for (std::size_t i = 0; i < space.dimension(); i += 97) EXPECT_EQ(space.index(space.config(i)), i);
}

TEST(Evolution, MatchesDenseExponential) {
  const Chain10 chain(Circuit(2, {{Gate::W}}), {1, 1}, true, 2);
  const RestrictedEvolution10 evolution(chain);
  const Eigen::MatrixXcd h = Eigen::MatrixXd(evolution.space().hamiltonian()).cast<Complex>();
  const auto psi0 = evolution.initial_state();
  for (double tau : {0.0, 0.7, 3.0, 11.0}) {
    const Eigen::VectorXcd expected = (Complex(0.0, -tau) * h).exp() * psi0.amplitudes;
    EXPECT_LE((evolution.evolve(psi0, tau).amplitudes - expected).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((evolution.evolve_initial(tau).amplitudes - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Evolution, NormAndEnergyConserved) {
  const Chain10 chain(ws3_circuit(), {1, 0, 0}, false);
  const RestrictedEvolution10 evolution(chain);
  const auto psi0 = evolution.initial_state();
  const double e0 = evolution.energy(psi0);
  for (double tau : {0.5, 10.0, 100.0, 1000.0}) {
    const auto psi = evolution.evolve(psi0, tau);
    EXPECT_NEAR(psi.amplitudes.norm(), 1.0, 1e-9);
    EXPECT_NEAR(evolution.energy(psi), e0, 1e-9);
  }
}

TEST(Evolution, WorkStatesFollowThePrefixRule) {
  const Chain10 chain(Circuit(2, {{Gate::W}, {Gate::W}}), {1, 1}, true, 1);
  const RestrictedEvolution10 evolution(chain);
  for (int p = 0; p <= chain.gate_count(); ++p)
    EXPECT_NEAR(fidelity(evolution.work_state(p), work_state_after(chain, p)), 1.0, 1e-12);
}

TEST(Success, ZeroAtStartAndBounded) {
  const Chain10 chain(Circuit(2, {{Gate::S}}), {0, 1}, true, 3);
  EXPECT_EQ(success_probability_exact(chain, 0.0), 0.0);
  for (double tau : {1.0, 5.0, 40.0}) {
    const double p = success_probability_exact(chain, tau);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(Success, AgreesWithFermionCounting) {
  for (int f = 1; f <= 5; ++f) {
    const Chain10 chain(Circuit(2, {{Gate::W}}), {1, 0}, true, f);
    const RestrictedEvolution10 evolution(chain);
    const auto spec = OccupationSpec::padded_chain(f, chain.program_length());
    for (double tau : {0.3, 1.7, 6.0, 25.0}) {
      EXPECT_NEAR(evolution.success_probability(evolution.evolve_initial(tau)), success_probability(spec, tau), 1e-8)
          << "f=" << f << " tau=" << tau;
    }
  }
}

TEST(SigmaZ, IdentityCircuitKeepsInputBit) {
  const Chain10 zeros(Circuit::identity(3, 2), {0, 0, 0}, false);
  EXPECT_NEAR(sigma_z_expectation(zeros, 0.0), -1.0, 1e-12);
  const Chain10 one(Circuit::identity(2, 1), {0, 1}, true, 3);
  const RestrictedEvolution10 evolution(one);
  for (double tau : {0.0, 2.0, 17.0, 300.0}) EXPECT_NEAR(evolution.sigma_z(evolution.evolve_initial(tau)), 1.0, 1e-9);
}

TEST(SigmaZ, DoneWeightBoundsTheOutput) {
  // Swap moves w_1 = 0 to w_2: every done configuration reads -1.
  const Chain10 chain(Circuit(2, {{Gate::S}}), {0, 1}, true, 4);
  const RestrictedEvolution10 evolution(chain);
  for (double tau : {3.0, 30.0, 300.0}) {
    const auto psi = evolution.evolve_initial(tau);
    EXPECT_LE(evolution.sigma_z(psi), 1.0 - 2.0 * evolution.success_probability(psi) + 1e-12);
  }
}

}  // namespace
}  // namespace hqca
