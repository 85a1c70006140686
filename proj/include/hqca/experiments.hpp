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

// End-to-end experiments behind the command line tool. Each run returns a
// table (written as CSV) and a summary (written as JSON); both carry the
// full configuration, seed, RNG name and tool version, and nothing that
// varies between identical runs.

#ifndef HQCA_EXPERIMENTS_HPP
#define HQCA_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hqca/circuit.hpp"
#include "hqca/kernels.hpp"

namespace hqca {

/// Acceptance limits, loaded from data/thresholds.json.
struct Thresholds {
  std::string version;
  double p20_min = 0.0;
  double p10_min = 0.0;
  double lemma2_slack = 0.0;
  double lemma3_slack = 0.0;
  double lemma3_mean_window = 0.0;
  double lemma1_tv_max = 0.0;
  double doubling_ratio_min = 0.0;
  double doubling_ratio_max = 0.0;
  double fit_stability_factor = 0.0;
  double conditional_output_tol = 0.0;

  static Thresholds from_json_text(const std::string& text);
  static Thresholds from_file(const std::string& path);
};

/// Path of the thresholds file shipped with the sources.
std::string default_thresholds_path();

struct ExperimentConfig {
  std::string circuit_path;
  std::vector<int> input_bits;  ///< empty means all zeros
  int f = 22;
  double tau_coeff = 10.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  int m = 5;                  ///< fermion mode: M
  std::vector<int> lengths;   ///< walk mode: line lengths
  std::vector<double> taus;   ///< walk mode: explicit grid (empty = L * 2^k, k = 2..10)
  std::string thresholds_path;
  kernels::Exec exec = kernels::Exec::OpenMP;
};

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult {
  Table table;
  std::string summary_json;
  bool pass = false;
};

/// "# key: value" lines, the header, then the rows.
std::string to_csv(const Table& table);
/// printf "%.17g"; "nan" / "inf" for non-finite values.
std::string format_number(double v);
/// Writes <stem>.csv and <stem>.json.
void write_outputs(const ExperimentResult& result, const std::string& stem);

/// Padded d = 20 readout; CSV columns tau,p_bullet,p_out1.
ExperimentResult run_d20_experiment(const ExperimentConfig& config);
/// Padded d = 10 chain, exact restricted evolution when the subspace fits
/// the dense limit, otherwise free-fermion counting (p_done only);
/// CSV columns tau,p_done,sigma_z.
ExperimentResult run_d10_experiment(const ExperimentConfig& config);
/// Free fermions on the padded chain of (f, M); CSV columns tau,E_X,p_success.
ExperimentResult run_fermion_experiment(const ExperimentConfig& config);
/// Total variation to the limiting distribution from c = 1; CSV columns
/// L,tau,tv. Passes when the log-log fitted TV ratio per doubling of tau lies
/// in the threshold window for every L; the spread of the fitted C over L is
/// reported but not gated.
ExperimentResult run_lemma1_sweep(const ExperimentConfig& config);
/// Every full-space oracle check; CSV columns
/// check,instance,max_deviation,tolerance,pass.
ExperimentResult run_oracle_experiment(const ExperimentConfig& config);

/// tau_max = c * n * ln n.
inline double tau_budget(double c, int n) { return c * n * std::log(static_cast<double>(n)); }

}  // namespace hqca

#endif  // HQCA_EXPERIMENTS_HPP
