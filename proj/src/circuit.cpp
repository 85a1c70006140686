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

#include "hqca/circuit.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hqca {

Eigen::Matrix4cd gate_matrix(Gate gate) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  switch (gate) {
    case Gate::W: {
      const double h = 1.0 / std::sqrt(2.0);
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      m(2, 2) = h;
      m(2, 3) = -h;
      m(3, 2) = h;
      m(3, 3) = h;
      break;
    }
    case Gate::S:
      m(0, 0) = 1.0;
      m(1, 2) = 1.0;
      m(2, 1) = 1.0;
      m(3, 3) = 1.0;
      break;
    case Gate::I:
      m.setIdentity();
      break;
  }
  return m;
}

char gate_symbol(Gate gate) {
  switch (gate) {
    case Gate::W:
      return 'W';
    case Gate::S:
      return 'S';
    case Gate::I:
      return 'I';
  }
  return '?';
}

Gate parse_gate(std::string_view token) {
  if (token == "W") return Gate::W;
  if (token == "S") return Gate::S;
  if (token == "I") return Gate::I;
  if (!token.empty() && token.front() == 'W') {
    throw std::invalid_argument("gate '" + std::string(token) +
                                "': W must have its control on the left qubit");
  }
  throw std::invalid_argument("unknown gate '" + std::string(token) + "'");
}

Circuit::Circuit(int n_qubits, std::vector<std::vector<Gate>> rounds)
    : n_qubits_(n_qubits), rounds_(std::move(rounds)) {
  if (n_qubits_ < 2) throw std::invalid_argument("circuit needs at least 2 qubits");
  if (rounds_.empty()) throw std::invalid_argument("circuit needs at least 1 round");
  for (std::size_t k = 0; k < rounds_.size(); ++k) {
    if (static_cast<int>(rounds_[k].size()) != n_qubits_ - 1) {
      throw std::invalid_argument("round " + std::to_string(k + 1) + " has " +
                                  std::to_string(rounds_[k].size()) + " gates, expected " +
                                  std::to_string(n_qubits_ - 1));
    }
  }
}

Circuit Circuit::from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("circuit JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("rounds")) {
    throw std::invalid_argument("circuit JSON needs \"n_qubits\" and \"rounds\"");
  }
  const int n = doc.at("n_qubits").get<int>();
  std::vector<std::vector<Gate>> rounds;
  for (const auto& round : doc.at("rounds")) {
    std::vector<Gate> gates;
    for (const auto& token : round) gates.push_back(parse_gate(token.get<std::string>()));
    rounds.push_back(std::move(gates));
  }
  return Circuit(n, std::move(rounds));
}

Circuit Circuit::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string Circuit::to_json_text() const {
  nlohmann::json doc;
  doc["n_qubits"] = n_qubits_;
  doc["rounds"] = nlohmann::json::array();
  for (const auto& round : rounds_) {
    nlohmann::json r = nlohmann::json::array();
    for (Gate g : round) r.push_back(std::string(1, gate_symbol(g)));
    doc["rounds"].push_back(r);
  }
  return doc.dump();
}

Circuit Circuit::identity(int n_qubits, int n_rounds) {
  return Circuit(n_qubits, std::vector<std::vector<Gate>>(
                               n_rounds, std::vector<Gate>(n_qubits - 1, Gate::I)));
}

QubitState::QubitState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  const auto dim = amplitudes_.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("qubit state dimension must be a power of two >= 2");
  }
  n_qubits_ = 0;
  while ((Eigen::Index{1} << n_qubits_) < dim) ++n_qubits_;
}

QubitState QubitState::basis(std::span<const int> bits) {
  if (bits.empty()) throw std::invalid_argument("empty bit string");
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(b);
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << bits.size());
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return QubitState(std::move(v));
}

QubitState QubitState::basis(std::string_view bits) {
  std::vector<int> v;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0/1");
    v.push_back(c - '0');
  }
  return basis(std::span<const int>(v));
}

std::size_t QubitState::qubit_mask(int qubit) const {
  if (qubit < 1 || qubit > n_qubits_) throw std::out_of_range("qubit index out of range");
  return std::size_t{1} << (n_qubits_ - qubit);
}

bool QubitState::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
}

void apply_two_qubit_unitary(const Eigen::Matrix4cd& u, QubitState& state, int left_qubit) {
  const int n = state.n_qubits();
  if (left_qubit < 1 || left_qubit > n - 1) {
    throw std::out_of_range("left qubit " + std::to_string(left_qubit) + " outside 1.." +
                            std::to_string(n - 1));
  }
  const std::size_t hi = state.qubit_mask(left_qubit);
  const std::size_t lo = state.qubit_mask(left_qubit + 1);
  auto& a = state.mutable_amplitudes();
  const auto dim = static_cast<std::size_t>(a.size());
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & (hi | lo)) continue;
    const std::size_t idx[4] = {base, base | lo, base | hi, base | hi | lo};
    Eigen::Vector4cd in;
    for (int r = 0; r < 4; ++r) in(r) = a(static_cast<Eigen::Index>(idx[r]));
    const Eigen::Vector4cd out = u * in;
    for (int r = 0; r < 4; ++r) a(static_cast<Eigen::Index>(idx[r])) = out(r);
  }
}

QubitState apply_two_qubit_gate(Gate gate, const QubitState& state, int left_qubit) {
  QubitState out = state;
  apply_two_qubit_unitary(gate_matrix(gate), out, left_qubit);
  return out;
}

QubitState simulate_circuit(const Circuit& circuit, const QubitState& input) {
  if (input.n_qubits() != circuit.n_qubits()) {
    throw std::invalid_argument("input has " + std::to_string(input.n_qubits()) +
                                " qubits, circuit has " + std::to_string(circuit.n_qubits()));
  }
  QubitState state = input;
  for (const auto& round : circuit.rounds()) {
    for (std::size_t g = 0; g < round.size(); ++g) {
      apply_two_qubit_unitary(gate_matrix(round[g]), state, static_cast<int>(g) + 1);
    }
  }
  return state;
}

double probability_one(const QubitState& state, int qubit) {
  const std::size_t mask = state.qubit_mask(qubit);
  double p = 0.0;
  const auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (static_cast<std::size_t>(i) & mask) p += std::norm(a(i));
  }
  return p;
}

double output_sigma_z(const QubitState& state, int qubit) {
  const double p1 = probability_one(state, qubit);
  return p1 - (state.amplitudes().squaredNorm() - p1);
}

double fidelity(const QubitState& a, const QubitState& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("fidelity: size mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace hqca
