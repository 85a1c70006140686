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

// hqca: run one experiment, write <out>.csv and <out>.json, and exit 0 only
// when every check of that experiment passes.

#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hqca/experiments.hpp"
#include "hqca/version.hpp"

namespace {

std::vector<int> parse_bits(const std::string& text) {
  std::vector<int> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw CLI::ValidationError("--input", "expected a string of 0 and 1");
    bits.push_back(c - '0');
  }
  return bits;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian quantum cellular automaton experiments"};
  app.set_version_flag("--version", std::string(hqca::kVersion));
  app.require_subcommand(1);

  hqca::ExperimentConfig config;
  std::string out;
  std::string input;
  bool serial = false;

  auto common = [&](CLI::App* sub, const std::string& default_out) {
    out = default_out;
    sub->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
    sub->add_option("--samples", config.samples, "number of sampled times")->capture_default_str();
    sub->add_option("--tau-coeff", config.tau_coeff, "c in tau_max = c n ln n")->capture_default_str();
    sub->add_option("--out", out, "output stem; writes <out>.csv and <out>.json");
    sub->add_option("--thresholds", config.thresholds_path, "acceptance thresholds file");
    sub->add_flag("--serial", serial, "run kernels on one thread");
  };
  auto circuit_options = [&](CLI::App* sub) {
    sub->add_option("--circuit", config.circuit_path, "circuit JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--input", input, "input bits, qubit 1 first (default all 0)");
  };

  std::function<hqca::ExperimentResult(const hqca::ExperimentConfig&)> run;

  auto* sim10 = app.add_subcommand("simulate10", "padded d = 10 chain: p10 and <sigma_z>");
  common(sim10, "simulate10");
  circuit_options(sim10);
  sim10->add_option("--f", config.f, "padding factor")->capture_default_str()->check(CLI::Range(1, 1000));
  sim10->callback([&] { run = hqca::run_d10_experiment; });

  auto* sim20 = app.add_subcommand("simulate20", "padded d = 20 chain: readout probability and output");
  common(sim20, "simulate20");
  circuit_options(sim20);
  sim20->callback([&] { run = hqca::run_d20_experiment; });

  auto* walk = app.add_subcommand("walk", "time-averaged walk against its limiting distribution");
  common(walk, "walk");
  walk->add_option("--lengths", config.lengths, "line lengths (default 11,51,101)")->delimiter(',');
  walk->add_option("--taus", config.taus, "explicit tau grid (default L*2^k, k=2..10)")->delimiter(',');
  walk->callback([&] { run = hqca::run_lemma1_sweep; });

  auto* fermion = app.add_subcommand("fermion", "free-fermion counting on the padded chain");
  common(fermion, "fermion");
  fermion->add_option("--f", config.f, "padding factor")->capture_default_str()->check(CLI::Range(1, 1000));
  fermion->add_option("--m", config.m, "program length M")->capture_default_str()->check(CLI::Range(1, 10000));
  fermion->callback([&] { run = hqca::run_fermion_experiment; });

  auto* oracle = app.add_subcommand("oracle", "full-space checks on tiny chains");
  common(oracle, "oracle");
  oracle->callback([&] { run = hqca::run_oracle_experiment; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (!input.empty()) config.input_bits = parse_bits(input);
    config.exec = serial ? hqca::kernels::Exec::Serial : hqca::kernels::Exec::OpenMP;
    const auto result = run(config);
    hqca::write_outputs(result, out);
    std::printf("%s\n%s: %s.csv %s.json\n", result.summary_json.c_str(), result.pass ? "PASS" : "FAIL", out.c_str(),
                out.c_str());
    return result.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hqca: %s\n", e.what());
    return 2;
  }
}
