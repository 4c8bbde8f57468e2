// Copyright 2026 The qsky Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qsky command line: runs the experiments described by a YAML config and
// writes CSV tables (plus SKGF field dumps for `simulate --dump-fields`).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsky/config.hpp"
#include "qsky/csv.hpp"
#include "qsky/experiments.hpp"

namespace fs = std::filesystem;
using namespace qsky;

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  bool deterministic = false;
  std::size_t resolution = 0;
  bool dump_fields = false;
};

void add_common(CLI::App* sub, Common& c, bool needs_config) {
  auto* opt = sub->add_option("--config", c.config, "YAML experiment config");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output directory");
  sub->add_flag("--deterministic", c.deterministic,
                "ordered reductions and zero wall_time, for byte-stable CSV");
  sub->add_option("--resolution", c.resolution, "override grid nx = ny")->check(CLI::Range(16, 8192));
}

ExperimentConfig load(const Common& c, ExperimentKind kind) {
  ExperimentConfig cfg = load_config(c.config);
  cfg.run.experiment = kind;
  if (c.deterministic) cfg.run.deterministic = true;
  if (c.resolution) cfg.grid.nx = cfg.grid.ny = c.resolution;
  cfg.validate();
  return cfg;
}

int run(const Common& c, ExperimentKind kind) {
  const ExperimentConfig cfg = load(c, kind);
  const fs::path out_dir = c.out;
  fs::create_directories(out_dir);
  std::optional<fs::path> dumps;
  if (c.dump_fields) dumps = out_dir / "fields";
  const ExperimentResult result = run_experiment(cfg, dumps);
  const fs::path csv = out_dir / cfg.run.output.filename();
  write_results_csv(csv, result);
  for (const auto& r : result.rows) {
    std::cout << r.experiment << " (" << r.l1 << "," << r.l2 << ")";
    if (r.sweep_value) std::cout << " @ " << *r.sweep_value;
    std::cout << ": N " << r.n_initial << " -> " << r.n_final << "\n";
  }
  std::cout << "wrote " << csv.string() << "\n";
  return 0;
}

int run_oracle(const Common& c, std::size_t samples) {
  fs::create_directories(c.out);
  const fs::path csv = fs::path(c.out) / "oracle.csv";
  std::ofstream out(csv, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + csv.string());
  out << "family,samples,max_relative_error,worst_rho,worst_phi,worst_p\n";
  for (auto f : {oracle::Family::bit_flip, oracle::Family::amp_damp, oracle::Family::phase_damp}) {
    const auto r = oracle_residual(f, samples);
    out << oracle::to_string(f) << ',' << r.samples << ',' << format_double(r.max_relative_error)
        << ',' << format_double(r.worst_rho) << ',' << format_double(r.worst_phi) << ','
        << format_double(r.worst_p) << '\n';
    std::cout << oracle::to_string(f) << ": max relative error " << r.max_relative_error << "\n";
  }
  std::cout << "wrote " << csv.string() << "\n";
  return 0;
}

// CPTP class of every configured channel plus the clean-state invariants.
int run_verify(const Common& c) {
  ExperimentConfig cfg = load_config(c.config);
  if (c.resolution) cfg.grid.nx = cfg.grid.ny = c.resolution;
  const Grid grid = cfg.grid.make();
  const auto topo = cfg.topology_options();
  int failures = 0;
  auto report = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };

  for (const auto& spec : cfg.channels) {
    const auto ch = build_channel(cfg, spec.name, grid);
    const auto rep = verify_cptp(ch);
    const auto want = ch.trace_preserving() ? CptpClass::trace_preserving : CptpClass::trace_decreasing;
    report(rep.classification == want, "channel " + spec.name + " is " + to_string(rep.classification));
  }
  for (int target : cfg.run.topologies) {
    const StateSpec s = cfg.state_for(target);
    const auto u = normalize_stokes(stokes_from_density(normalize_trace(build_state(s, grid))),
                                    topo.stokes_floor);
    const double n = skyrmion_number(u, topo).N;
    const double mirrored = skyrmion_number(reflect_x(u), topo).N;
    const auto again = normalize_stokes(as_stokes(u), topo.stokes_floor);
    bool same = true;
    for (std::size_t k = 0; k < grid.size(); ++k) same = same && again.n[k] == u.n[k];
    const std::string tag = "N=" + std::to_string(target);
    report(std::abs(n - target) <= 0.05, tag + " recovered as " + format_double(n));
    report(std::abs(n + mirrored) <= 1e-12, tag + " mirror antisymmetric");
    report(same, tag + " normalization idempotent");
  }
  std::cout << failures << " failure(s)\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsky: topology of Skyrmionic beams under local channels"};
  app.require_subcommand(1);

  Common common;
  std::size_t oracle_samples = 200;

  struct Sub {
    const char* name;
    const char* help;
    ExperimentKind kind;
  };
  const Sub subs[] = {
      {"simulate", "single state through one channel", ExperimentKind::simulate},
      {"table", "topology table over the configured N values", ExperimentKind::topology_table},
      {"sweep", "N against a constant noise parameter", ExperimentKind::p_sweep},
      {"homotopy", "N along the homotopy t in [0, 1]", ExperimentKind::homotopy},
      {"compactify", "depolarizer with a cutoff outside a disc", ExperimentKind::compactify},
  };
  std::optional<ExperimentKind> chosen;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, common, true);
    if (s.kind == ExperimentKind::simulate) {
      sub->add_flag("--dump-fields", common.dump_fields, "write SKGF snapshots under <out>/fields");
    }
    sub->callback([&chosen, kind = s.kind] { chosen = kind; });
  }
  auto* oracle_cmd = app.add_subcommand("oracle", "pipeline against the closed-form Stokes vectors");
  add_common(oracle_cmd, common, false);
  oracle_cmd->add_option("--samples", oracle_samples, "samples per family")->check(CLI::PositiveNumber);
  auto* verify_cmd = app.add_subcommand("verify", "CPTP classes and clean-state invariants");
  add_common(verify_cmd, common, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (chosen) return run(common, *chosen);
    if (oracle_cmd->parsed()) return run_oracle(common, oracle_samples);
    if (verify_cmd->parsed()) return run_verify(common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
