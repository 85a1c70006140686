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

#include "hqca/fullspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "hqca/walk.hpp"

namespace hqca {

namespace {

constexpr double kExactTolerance = 0.0;
constexpr double kLeakageTolerance = 1e-12;
constexpr double kRestrictionTolerance = 1e-12;
constexpr double kEvolutionTolerance = 1e-8;
constexpr double kExtraQubitTolerance = 1e-12;
constexpr int kFixedChunks = 64;

// Nonzeros of -(R + R^dag), listed per two-site input index.
struct BondTable {
  int d = 0;
  std::vector<std::vector<std::pair<int, Complex>>> columns;
};

BondTable make_bond_table(const Eigen::MatrixXcd& local, int d) {
  if (local.rows() != d * d || local.cols() != d * d) throw std::invalid_argument("local term must be d^2 x d^2");
  const Eigen::MatrixXcd h = -(local + local.adjoint());
  BondTable t;
  t.d = d;
  t.columns.resize(static_cast<std::size_t>(d * d));
  for (int c = 0; c < d * d; ++c) {
    for (int r = 0; r < d * d; ++r) {
      if (h(r, c) != Complex(0.0)) t.columns[static_cast<std::size_t>(c)].emplace_back(r, h(r, c));
    }
  }
  return t;
}

// Calls f(row, value) for every nonzero H(row, col) contributed by `bond`.
template <class F>
void for_bond_entries(const BondTable& t, const QuditCodec& codec, std::uint64_t col, int bond, F&& f) {
  const int a = codec.digit(col, bond);
  const int b = codec.digit(col, bond + 1);
  const std::uint64_t base = col - static_cast<std::uint64_t>(a) * codec.place(bond) -
                             static_cast<std::uint64_t>(b) * codec.place(bond + 1);
  for (const auto& [r, v] : t.columns[static_cast<std::size_t>(a * t.d + b)]) {
    const auto ra = static_cast<std::uint64_t>(r / t.d);
    const auto rb = static_cast<std::uint64_t>(r % t.d);
    f(base + ra * codec.place(bond) + rb * codec.place(bond + 1), v);
  }
}

template <class F>
void for_column_entries(const BondTable& t, const QuditCodec& codec, std::uint64_t col, F&& f) {
  for (int bond = 1; bond < codec.length(); ++bond) for_bond_entries(t, codec, col, bond, f);
}

void check_matrix_guard(const QuditCodec& codec) {
  if (codec.dimension() > kMaxMatrixDimension) {
    throw std::length_error("full space has " + std::to_string(codec.dimension()) + " states (matrix limit " +
                            std::to_string(kMaxMatrixDimension) + ")");
  }
}

int digit10(Program10 p, int bit) { return 2 * static_cast<int>(p) + bit; }
int digit20(Program20 p, int bit) { return 2 * static_cast<int>(p) + bit; }

void set_entry(Eigen::MatrixXcd& r, int d, int ket1, int ket2, int bra1, int bra2, Complex v) {
  r(ket1 * d + ket2, bra1 * d + bra2) += v;
}

// Sparse state -> dense vector on a sorted support; `complete` is cleared
// when a key falls outside the support.
Eigen::VectorXcd on_support(const SparseState& s, std::span<const std::uint64_t> support, bool& complete) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(support.size()));
  complete = true;
  for (const auto& [k, a] : s) {
    const auto it = std::lower_bound(support.begin(), support.end(), k);
    if (it == support.end() || *it != k) {
      complete = false;
      continue;
    }
    v(it - support.begin()) = a;
  }
  return v;
}

double max_abs_difference(const SparseState& a, const SparseState& b) {
  double dev = 0.0;
  for (const auto& [k, v] : a) {
    const auto it = b.find(k);
    dev = std::max(dev, std::abs(v - (it == b.end() ? Complex(0.0) : it->second)));
  }
  for (const auto& [k, v] : b) {
    if (!a.contains(k)) dev = std::max(dev, std::abs(v));
  }
  return dev;
}

void add_scaled(SparseState& acc, const SparseState& s, Complex w) {
  for (const auto& [k, v] : s) acc[k] += w * v;
}

CheckReport make_report(std::string check, std::string instance, double dev, double tol, std::string detail = {}) {
  CheckReport r;
  r.check = std::move(check);
  r.instance = std::move(instance);
  r.max_deviation = dev;
  r.tolerance = tol;
  r.pass = dev <= tol;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Codec

QuditCodec::QuditCodec(int d, int length) : d_(d), length_(length) {
  if (d < 2 || length < 1) throw std::invalid_argument("QuditCodec needs d >= 2 and L >= 1");
  place_.assign(static_cast<std::size_t>(length), 1);
  std::uint64_t dim = 1;
  for (int s = length; s >= 1; --s) {
    place_[static_cast<std::size_t>(s - 1)] = dim;
    if (dim > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d)) {
      throw std::overflow_error("d^L does not fit in 64 bits");
    }
    dim *= static_cast<std::uint64_t>(d);
  }
  dimension_ = dim;
}

std::uint64_t QuditCodec::encode(std::span<const int> digits) const {
  if (static_cast<int>(digits.size()) != length_) throw std::invalid_argument("QuditCodec::encode: wrong length");
  std::uint64_t index = 0;
  for (int s = 1; s <= length_; ++s) {
    const int v = digits[static_cast<std::size_t>(s - 1)];
    if (v < 0 || v >= d_) throw std::out_of_range("QuditCodec::encode: digit out of range");
    index += static_cast<std::uint64_t>(v) * place(s);
  }
  return index;
}

std::vector<int> QuditCodec::decode(std::uint64_t index) const {
  if (index >= dimension_) throw std::out_of_range("QuditCodec::decode: index out of range");
  std::vector<int> digits(static_cast<std::size_t>(length_));
  for (int s = 1; s <= length_; ++s) digits[static_cast<std::size_t>(s - 1)] = digit(index, s);
  return digits;
}

int QuditCodec::digit(std::uint64_t index, int site) const {
  return static_cast<int>((index / place(site)) % static_cast<std::uint64_t>(d_));
}

std::uint64_t QuditCodec::shift(std::uint64_t index, int k) const {
  const auto digits = decode(index);
  std::vector<int> moved(digits.size());
  for (int s = 0; s < length_; ++s) {
    const int to = ((s + k) % length_ + length_) % length_;
    moved[static_cast<std::size_t>(to)] = digits[static_cast<std::size_t>(s)];
  }
  return encode(moved);
}

// ---------------------------------------------------------------------------
// Local terms

RuleTable10 RuleTable10::corrupted() {
  RuleTable10 t;
  t.w = gate_matrix(Gate::W).transpose();
  return t;
}

Eigen::MatrixXcd local_term10(const RuleTable10& table) {
  constexpr int d = 10;
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (Gate g : {Gate::W, Gate::S, Gate::I}) {
    const Program10 a = program_symbol(g);
    const Eigen::Matrix4cd u = g == Gate::W ? table.w : gate_matrix(g);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        // |A empty><empty A| (x) 1
        set_entry(r, d, digit10(a, x), digit10(Program10::Empty, y), digit10(Program10::Empty, x), digit10(a, y),
                  1.0);
        // |A ptr><ptr A| (x) A
        for (int xp = 0; xp < 2; ++xp) {
          for (int yp = 0; yp < 2; ++yp) {
            const Complex v = u(2 * xp + yp, 2 * x + y);
            if (v == Complex(0.0)) continue;
            set_entry(r, d, digit10(a, xp), digit10(Program10::Pointer, yp), digit10(Program10::Pointer, x),
                      digit10(a, y), v);
          }
        }
      }
    }
  }
  return r;
}

Eigen::MatrixXcd local_term20(const RuleTable20& table) {
  constexpr int d = 20;
  using P = Program20;
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(d * d, d * d);
  // ket <- bra on the program pair with identity on the data pair, optionally
  // projected on one data qubit.
  auto term = [&](P k1, P k2, P b1, P b2, int bit = -1, BitSite site = BitSite::Right) {
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        if (bit >= 0 && (site == BitSite::Left ? x : y) != bit) continue;
        set_entry(r, d, digit20(k1, x), digit20(k2, y), digit20(b1, x), digit20(b2, y), 1.0);
      }
    }
  };
  const P gates[] = {P::W, P::S, P::I};
  for (P a : gates) {
    term(marked(a), P::Empty, a, P::Turn);  // P1
    for (P b : gates) term(marked(a), b, a, marked(b));  // P2
    term(P::Turn, a, P::Empty, marked(a));  // P3
    term(a, P::Shift, P::Shift, a);          // P5b
    // P5a: |A apply><apply A| (x) A
    const Eigen::Matrix4cd u = gate_matrix(gate_of(a));
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        for (int xp = 0; xp < 2; ++xp) {
          for (int yp = 0; yp < 2; ++yp) {
            const Complex v = u(2 * xp + yp, 2 * x + y);
            if (v == Complex(0.0)) continue;
            set_entry(r, d, digit20(a, xp), digit20(P::Apply, yp), digit20(P::Apply, x), digit20(a, y), v);
          }
        }
      }
    }
  }
  term(P::Empty, P::Apply, P::Empty, P::Turn, 1, table.rule4);  // P4a
  term(P::Empty, P::Shift, P::Empty, P::Turn, 0, table.rule4);  // P4b
  term(P::Turn, P::Empty, P::Apply, P::Empty, 1, table.rule6);  // P6a
  term(P::Turn, P::Empty, P::Shift, P::Empty, 0, table.rule6);  // P6b
  return r;
}

// ---------------------------------------------------------------------------
// Full Hamiltonians

SparseMatrixC build_full_hamiltonian(const Eigen::MatrixXcd& local, int d, int length, kernels::Exec exec) {
  const QuditCodec codec(d, length);
  check_matrix_guard(codec);
  const BondTable table = make_bond_table(local, d);
  const std::uint64_t dim = codec.dimension();
  const std::uint64_t chunk = (dim + kFixedChunks - 1) / kFixedChunks;
  using Triplets = std::vector<Eigen::Triplet<Complex>>;
  const auto parts = kernels::map_indexed<Triplets>(
      kFixedChunks,
      [&](std::size_t i) {
        Triplets out;
        const std::uint64_t begin = i * chunk;
        const std::uint64_t end = std::min(dim, begin + chunk);
        for (std::uint64_t col = begin; col < end; ++col) {
          for_column_entries(table, codec, col, [&](std::uint64_t row, Complex v) {
            out.emplace_back(static_cast<int>(row), static_cast<int>(col), v);
          });
        }
        return out;
      },
      exec);
  Triplets all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  SparseMatrixC h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.setFromTriplets(all.begin(), all.end());
  return h;
}

SparseMatrixC build_full_h10(int length, const RuleTable10& table, kernels::Exec exec) {
  return build_full_hamiltonian(local_term10(table), 10, length, exec);
}

SparseMatrixC build_full_h20(int length, const RuleTable20& table, kernels::Exec exec) {
  return build_full_hamiltonian(local_term20(table), 20, length, exec);
}

SparseMatrixC bond_operator(const Eigen::MatrixXcd& local, int d, int length, int bond) {
  const QuditCodec codec(d, length);
  check_matrix_guard(codec);
  if (bond < 1 || bond >= length) throw std::out_of_range("bond_operator: bond out of range");
  const BondTable table = make_bond_table(local, d);
  std::vector<Eigen::Triplet<Complex>> entries;
  for (std::uint64_t col = 0; col < codec.dimension(); ++col) {
    for_bond_entries(table, codec, col, bond, [&](std::uint64_t row, Complex v) {
      entries.emplace_back(static_cast<int>(row), static_cast<int>(col), v);
    });
  }
  const auto dim = static_cast<Eigen::Index>(codec.dimension());
  SparseMatrixC b(dim, dim);
  b.setFromTriplets(entries.begin(), entries.end());
  return b;
}

SparseState apply_hamiltonian(const Eigen::MatrixXcd& local, int d, int length, const SparseState& state) {
  const QuditCodec codec(d, length);
  const BondTable table = make_bond_table(local, d);
  SparseState out;
  for (const auto& [col, amp] : state) {
    for_column_entries(table, codec, col, [&](std::uint64_t row, Complex v) { out[row] += v * amp; });
  }
  return out;
}

std::vector<std::uint64_t> closure_support(const Eigen::MatrixXcd& local, int d, int length,
                                           std::span<const std::uint64_t> seeds) {
  const QuditCodec codec(d, length);
  const BondTable table = make_bond_table(local, d);
  std::unordered_set<std::uint64_t> seen(seeds.begin(), seeds.end());
  std::vector<std::uint64_t> frontier(seeds.begin(), seeds.end());
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t col : frontier) {
      for_column_entries(table, codec, col, [&](std::uint64_t row, Complex) {
        if (seen.insert(row).second) next.push_back(row);
      });
    }
    if (seen.size() > kMaxSparseSupport) {
      throw std::length_error("closure exceeds " + std::to_string(kMaxSparseSupport) + " basis states");
    }
    frontier = std::move(next);
  }
  std::vector<std::uint64_t> support(seen.begin(), seen.end());
  std::sort(support.begin(), support.end());
  return support;
}

SparseMatrixC hamiltonian_on_support(const Eigen::MatrixXcd& local, int d, int length,
                                     std::span<const std::uint64_t> support) {
  const QuditCodec codec(d, length);
  const BondTable table = make_bond_table(local, d);
  std::vector<Eigen::Triplet<Complex>> entries;
  for (std::size_t j = 0; j < support.size(); ++j) {
    for_column_entries(table, codec, support[j], [&](std::uint64_t row, Complex v) {
      const auto it = std::lower_bound(support.begin(), support.end(), row);
      if (it != support.end() && *it == row) {
        entries.emplace_back(static_cast<int>(it - support.begin()), static_cast<int>(j), v);
      }
    });
  }
  const auto n = static_cast<Eigen::Index>(support.size());
  SparseMatrixC h(n, n);
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

Eigen::VectorXcd expmv(const SparseMatrixC& h, const Eigen::VectorXcd& v, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("expmv: tau must be >= 0");
  double norm1 = 0.0;
  for (Eigen::Index c = 0; c < h.outerSize(); ++c) {
    double s = 0.0;
    for (SparseMatrixC::InnerIterator it(h, c); it; ++it) s += std::abs(it.value());
    norm1 = std::max(norm1, s);
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(tau * norm1)));
  const double dt = tau / steps;
  Eigen::VectorXcd acc = v;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXcd term = acc;
    Eigen::VectorXcd next = acc;
    for (int k = 1; k <= 80; ++k) {
      term = (h * term) * Complex(0.0, -dt / k);
      next += term;
      if (term.norm() <= 1e-18 * next.norm()) break;
    }
    acc = std::move(next);
  }
  return acc;
}

Eigen::VectorXcd to_dense(const SparseState& s, std::uint64_t dimension) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension));
  for (const auto& [k, a] : s) {
    if (k >= dimension) throw std::out_of_range("to_dense: index beyond dimension");
    v(static_cast<Eigen::Index>(k)) = a;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Encoders

SparseState encode10(const Chain10& chain, const GateConfig& config, const QubitState& work) {
  const QuditCodec codec(10, chain.length());
  const auto program = program_register(chain, config);
  std::uint64_t base = 0;
  for (int s = 1; s <= chain.length(); ++s) base += static_cast<std::uint64_t>(digit10(program[static_cast<std::size_t>(s - 1)], 0)) * codec.place(s);
  SparseState out;
  const int n = chain.n_qubits();
  for (Eigen::Index w = 0; w < work.amplitudes().size(); ++w) {
    const Complex a = work.amplitudes()(w);
    if (a == Complex(0.0)) continue;
    std::uint64_t index = base;
    for (int q = 1; q <= n; ++q) {
      if ((static_cast<std::size_t>(w) & work.qubit_mask(q)) != 0) index += codec.place(chain.work_offset() + q);
    }
    out[index] = a;
  }
  return out;
}

SparseState encode20(const ChainState20& state) {
  const int length = state.layout.length;
  const QuditCodec codec(20, length);
  std::uint64_t base = 0;
  for (int s = 1; s <= length; ++s) {
    const int bit = state.bit(s) == kWorkSlot ? 0 : state.bit(s);
    base += static_cast<std::uint64_t>(digit20(state.symbol(s), bit)) * codec.place(s);
  }
  SparseState out;
  const int n = state.layout.n_qubits;
  for (Eigen::Index w = 0; w < state.work.amplitudes().size(); ++w) {
    const Complex a = state.work.amplitudes()(w);
    if (a == Complex(0.0)) continue;
    std::uint64_t index = base;
    for (int q = 1; q <= n; ++q) {
      if ((static_cast<std::size_t>(w) & state.work.qubit_mask(q)) != 0) {
        index += codec.place(state.layout.work_offset() + q);
      }
    }
    out[index] = a;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checks

std::string to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["instance"] = r.instance;
    j["max_deviation"] = r.max_deviation;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (!r.detail.empty()) j["detail"] = r.detail;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

CheckReport verify_hermiticity(const SparseMatrixC& h, const std::string& instance) {
  const SparseMatrixC diff = h - SparseMatrixC(h.adjoint());
  double dev = 0.0;
  for (Eigen::Index c = 0; c < diff.outerSize(); ++c) {
    for (SparseMatrixC::InnerIterator it(diff, c); it; ++it) dev = std::max(dev, std::abs(it.value()));
  }
  return make_report("hermiticity", instance, dev, kExactTolerance);
}

CheckReport verify_translation_invariance(const Eigen::MatrixXcd& local, int d, int length,
                                          const std::string& instance) {
  const QuditCodec codec(d, length);
  const SparseMatrixC first = bond_operator(local, d, length, 1);
  double dev = 0.0;
  std::string detail;
  for (int bond = 2; bond < length; ++bond) {
    const SparseMatrixC b = bond_operator(local, d, length, bond);
    // The shift by bond-1 sites maps bond (1,2) onto (bond, bond+1).
    std::vector<Eigen::Triplet<Complex>> moved;
    for (Eigen::Index c = 0; c < first.outerSize(); ++c) {
      for (SparseMatrixC::InnerIterator it(first, c); it; ++it) {
        moved.emplace_back(static_cast<int>(codec.shift(static_cast<std::uint64_t>(it.row()), bond - 1)),
                           static_cast<int>(codec.shift(static_cast<std::uint64_t>(it.col()), bond - 1)),
                           it.value());
      }
    }
    SparseMatrixC shifted(b.rows(), b.cols());
    shifted.setFromTriplets(moved.begin(), moved.end());
    const SparseMatrixC diff = b - shifted;
    for (Eigen::Index c = 0; c < diff.outerSize(); ++c) {
      for (SparseMatrixC::InnerIterator it(diff, c); it; ++it) {
        if (std::abs(it.value()) > dev) {
          dev = std::abs(it.value());
          detail = "bond " + std::to_string(bond);
        }
      }
    }
  }
  return make_report("translation_invariance", instance, dev, kExactTolerance, detail);
}

CheckReport verify_subspace_invariance(const SparseMatrixC& h, const std::vector<Eigen::VectorXcd>& basis,
                                       const std::string& instance) {
  double dev = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Eigen::VectorXcd w = h * basis[i];
    Eigen::VectorXcd rest = w;
    for (const auto& u : basis) rest -= u * u.dot(w);
    const double leak = rest.cwiseAbs().maxCoeff();
    if (leak > dev) {
      dev = leak;
      detail = "basis vector " + std::to_string(i);
    }
  }
  return make_report("subspace_invariance", instance, dev, kLeakageTolerance, detail);
}

CheckReport verify_restriction_equality(const SparseMatrixC& h, const std::vector<Eigen::VectorXcd>& basis,
                                        const Eigen::MatrixXd& restricted, const std::string& instance) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (restricted.rows() != n || restricted.cols() != n) {
    return make_report("restriction_equality", instance, std::numeric_limits<double>::infinity(),
                       kRestrictionTolerance, "size mismatch");
  }
  double dev = 0.0;
  std::string detail;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXcd hv = h * basis[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      const double e = std::abs(basis[static_cast<std::size_t>(i)].dot(hv) - restricted(i, j));
      if (e > dev) {
        dev = e;
        detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    }
  }
  return make_report("restriction_equality", instance, dev, kRestrictionTolerance, detail);
}

std::vector<Eigen::VectorXcd> embedded_basis10(const RestrictedEvolution10& evolution) {
  const RestrictedSpace10& space = evolution.space();
  const Chain10& chain = space.chain();
  const QuditCodec codec(10, chain.length());
  check_matrix_guard(codec);
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const SparseState s = encode10(chain, space.config(i), evolution.work_state(space.prefix_length(i)));
    basis.push_back(to_dense(s, codec.dimension()));
  }
  return basis;
}

CheckReport verify_evolution_agreement10(const RestrictedEvolution10& evolution, const SparseMatrixC& h,
                                         std::span<const double> taus, const std::string& instance) {
  const auto basis = embedded_basis10(evolution);
  const Eigen::VectorXcd start = basis[evolution.space().initial_index()];
  double dev = 0.0;
  std::string detail;
  for (double tau : taus) {
    const Eigen::VectorXcd full = expmv(h, start, tau);
    const auto restricted = evolution.evolve_initial(tau);
    Eigen::VectorXcd embedded = Eigen::VectorXcd::Zero(full.size());
    for (std::size_t i = 0; i < basis.size(); ++i) embedded += restricted.amplitudes(static_cast<Eigen::Index>(i)) * basis[i];
    const double e = (full - embedded).cwiseAbs().maxCoeff();
    if (e >= dev) {
      dev = e;
      detail = "tau " + std::to_string(tau);
    }
  }
  return make_report("evolution_agreement", instance, dev, kEvolutionTolerance, detail);
}

CheckReport verify_extra_qubits10(const Chain10& chain, const SparseMatrixC& h, std::span<const double> taus,
                                  const std::string& instance) {
  const QuditCodec codec(10, chain.length());
  check_matrix_guard(codec);
  const QubitState work = chain.input_state();
  const Eigen::VectorXcd start = to_dense(encode10(chain, initial_config(chain), work), codec.dimension());
  std::vector<std::uint8_t> extra_one(codec.dimension(), 0);
  for (std::uint64_t b = 0; b < codec.dimension(); ++b) {
    for (int s = 1; s <= chain.length(); ++s) {
      const bool is_work = s > chain.work_offset() && s <= chain.work_offset() + chain.n_qubits();
      if (!is_work && codec.digit(b, s) % 2 == 1) extra_one[b] = 1;
    }
  }
  double dev = 0.0;
  for (double tau : taus) {
    const Eigen::VectorXcd full = expmv(h, start, tau);
    double w = 0.0;
    for (Eigen::Index b = 0; b < full.size(); ++b) {
      if (extra_one[static_cast<std::size_t>(b)]) w += std::norm(full(b));
    }
    dev = std::max(dev, w);
  }
  return make_report("extra_qubits_zero", instance, dev, kExtraQubitTolerance);
}

CheckReport verify_line_closure20(const StateLine20& line, const Eigen::MatrixXcd& local,
                                  const std::string& instance) {
  const int length = line.layout().length;
  std::vector<SparseState> enc;
  enc.reserve(line.states.size());
  for (const auto& s : line.states) enc.push_back(encode20(s));
  double dev = 0.0;
  std::string detail;
  for (std::size_t t = 0; t < enc.size(); ++t) {
    const SparseState image = apply_hamiltonian(local, 20, length, enc[t]);
    SparseState expected;
    if (t > 0) add_scaled(expected, enc[t - 1], -1.0);
    if (t + 1 < enc.size()) add_scaled(expected, enc[t + 1], -1.0);
    const double e = max_abs_difference(image, expected);
    if (e > dev) {
      dev = e;
      detail = "t " + std::to_string(t);
    }
  }
  return make_report("line_closure", instance, dev, kLeakageTolerance, detail);
}

CheckReport verify_line_column_scan20(const StateLine20& line, const Eigen::MatrixXcd& local,
                                      const std::string& instance) {
  std::set<std::uint64_t> line_support;
  std::vector<SparseState> enc;
  for (const auto& s : line.states) {
    enc.push_back(encode20(s));
    for (const auto& [k, a] : enc.back()) line_support.insert(k);
  }
  double dev = 0.0;
  std::string detail;
  for (std::size_t t = 0; t < enc.size(); ++t) {
    for (const auto& [k, a] : apply_hamiltonian(local, 20, line.layout().length, enc[t])) {
      if (!line_support.contains(k) && std::abs(a) > dev) {
        dev = std::abs(a);
        detail = "t " + std::to_string(t) + " reaches basis state " + std::to_string(k);
      }
    }
  }
  return make_report("line_column_scan", instance, dev, kLeakageTolerance, detail);
}

CheckReport verify_evolution_agreement20(const StateLine20& line, const Eigen::MatrixXcd& local,
                                         std::span<const double> taus, const std::string& instance) {
  const int length = line.layout().length;
  std::vector<SparseState> enc;
  for (const auto& s : line.states) enc.push_back(encode20(s));
  std::vector<std::uint64_t> seeds;
  for (const auto& [k, a] : enc.front()) seeds.push_back(k);
  const auto support = closure_support(local, 20, length, seeds);
  const SparseMatrixC h = hamiltonian_on_support(local, 20, length, support);

  bool complete = true;
  const Eigen::VectorXcd start = on_support(enc.front(), support, complete);
  const int points = line.final_index() + 1;
  const WalkSpectrum walk(points);
  std::vector<Complex> amp(static_cast<std::size_t>(points));
  double dev = 0.0;
  std::string detail;
  for (double tau : taus) {
    const Eigen::VectorXcd full = expmv(h, start, tau);
    kernels::propagator_column(walk, 1, tau, amp);
    SparseState walked;
    for (int t = 0; t < points; ++t) add_scaled(walked, enc[static_cast<std::size_t>(t)], amp[static_cast<std::size_t>(t)]);
    bool ok = true;
    const Eigen::VectorXcd embedded = on_support(walked, support, ok);
    complete = complete && ok;
    const double e = (full - embedded).cwiseAbs().maxCoeff();
    if (e >= dev) {
      dev = e;
      detail = "tau " + std::to_string(tau) + ", support " + std::to_string(support.size());
    }
  }
  if (!complete) dev = std::numeric_limits<double>::infinity();
  return make_report("evolution_agreement", instance, dev, kEvolutionTolerance, detail);
}

std::vector<CheckReport> run_oracle_suite(const RuleTable10& table10, const RuleTable20& table20,
                                          kernels::Exec exec) {
  std::vector<CheckReport> reports;

  // d = 10, N = 2, K = 1, L = 4 (10^4 states).
  const int length10 = 4;
  const auto local10 = local_term10(table10);
  const SparseMatrixC h10 = build_full_hamiltonian(local10, 10, length10, exec);
  reports.push_back(verify_hermiticity(h10, "d10 L=4"));
  reports.push_back(verify_translation_invariance(local10, 10, length10, "d10 L=4"));
  const double taus10[] = {0.0, 0.5, 1.0, 2.0, 5.0};
  for (Gate g : {Gate::W, Gate::S, Gate::I}) {
    const Circuit circuit(2, {{g}});
    for (const auto& bits : std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
      const std::string instance = std::string("d10 N=2 K=1 L=4 circuit=[") + gate_symbol(g) + "] input=" +
                                   std::to_string(bits[0]) + std::to_string(bits[1]);
      const Chain10 chain(circuit, bits, false);
      const RestrictedEvolution10 evolution(chain);
      const auto basis = embedded_basis10(evolution);
      reports.push_back(verify_subspace_invariance(h10, basis, instance));
      reports.push_back(
          verify_restriction_equality(h10, basis, Eigen::MatrixXd(evolution.space().hamiltonian()), instance));
      reports.push_back(verify_evolution_agreement10(evolution, h10, taus10, instance));
      reports.push_back(verify_extra_qubits10(chain, h10, taus10, instance));
    }
  }

  // d = 20: operator properties on L = 3, line checks on K = 1, N = 2 (L = 5).
  const auto local20 = local_term20(table20);
  reports.push_back(verify_hermiticity(build_full_hamiltonian(local20, 20, 3, exec), "d20 L=3"));
  reports.push_back(verify_translation_invariance(local20, 20, 3, "d20 L=3"));
  const double taus20[] = {0.0, 0.5, 2.0};
  const Circuit circuit20(2, {{Gate::W}});
  for (const auto& bits : std::vector<std::vector<int>>{{1, 0}, {1, 1}}) {
    const std::string instance = "d20 N=2 K=1 L=5 circuit=[W] input=" + std::to_string(bits[0]) +
                                 std::to_string(bits[1]);
    const StateLine20 line = generate_line(build_initial_state20(circuit20, bits, false));
    reports.push_back(verify_line_closure20(line, local20, instance));
    reports.push_back(verify_line_column_scan20(line, local20, instance));
    reports.push_back(verify_evolution_agreement20(line, local20, taus20, instance));
  }
  return reports;
}

}  // namespace hqca
