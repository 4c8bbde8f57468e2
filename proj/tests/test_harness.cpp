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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "qsky/config.hpp"
#include "qsky/csv.hpp"
#include "qsky/experiments.hpp"
#include "qsky/field_io.hpp"

using namespace qsky;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(QSKY_SOURCE_DIR) / "configs";

const char* kSmall = R"(
grid: {nx: 64, ny: 64, extent: 8.0}
state: {l1: 1, l2: 0, alpha: 0.0}
channels:
  - name: flip
    family: bit_flip
    p: 0.35
  - name: ret
    family: retarder
    theta: {profile: gauss_cos, modulation: 1.0, n: 2}
    varphi: 0.3
    psi: {profile: gauss_cos, amplitude: 0.2, modulation: 0.5, n: 1, decay: 0.5}
  - name: mix
    family: convex
    components:
      - {channel: flip, weight: 0.5}
      - {channel: ret, weight: 0.5}
run:
  experiment: table
  channel: mix
  topologies: [-2, 1, 3]
  sweep: {start: 0.0, stop: 1.0, step: 0.25}
)";

ExperimentConfig small(const std::string& patch = "") {
  return parse_config(std::string(kSmall) + patch);
}

}  // namespace

TEST_CASE("committed configs load and validate") {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(kConfigs)) {
    if (e.path().extension() != ".yaml") continue;
    INFO(e.path().string());
    const auto cfg = load_config(e.path());
    CHECK(cfg.grid.nx == 512);
    ++n;
  }
  CHECK(n >= 15);
}

TEST_CASE("config parsing") {
  const auto cfg = small();
  CHECK(cfg.grid.extent == 8.0);
  CHECK(cfg.channels.size() == 3);
  CHECK(cfg.channel("ret").params.at("varphi").family == ProfileFamily::constant);
  CHECK(cfg.channel("ret").params.at("psi").decay == 0.5);
  CHECK(cfg.run.sweep_values == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(cfg.run.topologies == std::vector<int>{-2, 1, 3});
  CHECK(cfg.run.experiment == ExperimentKind::topology_table);
  const auto ch = build_channel(cfg, "mix", cfg.grid.make());
  CHECK(ch.family() == ChannelFamily::convex);
  CHECK(ch.operator_count() == 3);
}

TEST_CASE("config errors are reported") {
  CHECK_THROWS_AS(parse_config("grid: [1, 2"), std::invalid_argument);
  CHECK_THROWS_AS(small("\n  mapping: {1: [1]}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"(
channels:
  - {name: a, family: convex, components: [{channel: b, weight: 1.0}]}
  - {name: b, family: bit_flip, p: 0.1}
run: {experiment: table, channel: a}
)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"(
channels:
  - {name: a, family: retarder, theta: 0.1}
run: {experiment: table, channel: a}
)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"(
channels:
  - {name: a, family: bit_flip, p: 0.1}
run: {experiment: sweep, channel: a, sweep: [0.2, 1.3]}
)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"(
channels:
  - {name: a, family: bit_flip, p: 0.1}
run: {experiment: homotopy, channel: a}
)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config("run: {experiment: table, channel: nowhere}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("run: {experiment: dance}"), std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/qsky.yaml"), std::runtime_error);
}

TEST_CASE("mapping overrides the default state choice") {
  auto cfg = small("\n  mapping: {2: [3, 1]}");
  CHECK(cfg.state_for(2).l1 == 3);
  CHECK(cfg.state_for(2).l2 == 1);
  CHECK(cfg.state_for(-1).l1 == -1);
  CHECK(cfg.state_for(-1).l2 == 0);
}

TEST_CASE("CSV round-trips rows exactly") {
  ExperimentResult r;
  ResultRow a;
  a.experiment = "sweep";
  a.channel = "bit_flip";
  a.sweep_value = 0.1;
  a.l1 = -3;
  a.n_initial = -2.9999995446721264;
  a.n_final = 1.0 / 3.0;
  a.valid_fraction = 0.99;
  a.singular = true;
  a.wall_time = 1e-3;
  ResultRow b = a;
  b.sweep_value.reset();
  b.boundary_phi = 0.25;
  b.singular = false;
  r.rows = {a, b};
  std::stringstream ss;
  write_results_csv(ss, r);
  const std::string text = ss.str();
  CHECK(text.rfind(std::string(kResultCsvHeader) + "\n", 0) == 0);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  const auto back = read_results_csv(ss);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0].n_final == a.n_final);
  CHECK(back.rows[0].sweep_value == a.sweep_value);
  CHECK(!back.rows[0].boundary_phi);
  CHECK(back.rows[0].singular);
  CHECK(!back.rows[1].sweep_value);
  CHECK(back.rows[1].boundary_phi == 0.25);
}

TEST_CASE("malformed CSV names the line") {
  std::stringstream bad(std::string(kResultCsvHeader) + "\nsweep,x,0.1,1,0,1,1,1,0,,0\nsweep,x,1\n");
  CHECK_THROWS_WITH(read_results_csv(bad), Catch::Matchers::ContainsSubstring("line 3"));
  std::stringstream nohdr("a,b\n");
  CHECK_THROWS_AS(read_results_csv(nohdr), std::runtime_error);
}

TEST_CASE("deterministic runs give byte-identical CSV") {
  const auto cfg = small();
  std::stringstream a, b;
  write_results_csv(a, run_topology_table(cfg));
  write_results_csv(b, run_topology_table(cfg));
  CHECK(a.str() == b.str());
}

TEST_CASE("N_initial comes from the standalone clean path") {
  const auto cfg = small();
  const auto res = run_topology_table(cfg);
  REQUIRE(res.rows.size() == 3);
  for (const auto& row : res.rows) {
    const double alone = clean_skyrmion_number({row.l1, row.l2, 0.0}, cfg.grid.make()).N;
    CHECK(std::abs(row.n_initial - alone) <= 1e-12);
    CHECK(row.wall_time == 0.0);
  }
}

TEST_CASE("sweep flags singular points") {
  auto cfg = small();
  cfg.run.experiment = ExperimentKind::p_sweep;
  cfg.run.channel = "flip";
  const auto res = run_p_sweep(cfg);
  REQUIRE(res.rows.size() == 5);
  for (const auto& row : res.rows) CHECK(row.singular == (*row.sweep_value == 0.5));
  CHECK(std::abs(res.rows[2].n_final) <= 0.02);
  CHECK(singular_points(ChannelFamily::amplitude_damping) == std::vector<double>{0.5, 1.0});
}

TEST_CASE("homotopy starts at the clean value") {
  auto cfg = small();
  cfg.run.experiment = ExperimentKind::homotopy;
  cfg.run.channel = "ret";
  const auto res = run_homotopy_trace(cfg);
  REQUIRE(res.rows.size() == 15);
  CHECK(std::abs(res.rows[0].n_final - res.rows[0].n_initial) <= 1e-12);
}

TEST_CASE("cutoff beyond the window reduces to a plain depolarizer") {
  auto cfg = small();
  cfg.run.experiment = ExperimentKind::compactify;
  cfg.run.cutoff.radius = 20.0;
  for (const auto& row : run_compactification_break(cfg).rows) {
    CHECK(std::abs(row.n_final - std::round(row.n_final)) <= 0.02);
    CHECK(row.boundary_phi.has_value());
  }
}

TEST_CASE("simulate writes SKGF dumps") {
  auto cfg = small();
  cfg.run.experiment = ExperimentKind::simulate;
  cfg.run.channel = "flip";
  const fs::path dir = fs::temp_directory_path() / "qsky_test_dumps";
  fs::remove_all(dir);
  const auto res = run_experiment(cfg, dir);
  REQUIRE(res.rows.size() == 1);
  const auto snap = read_skgf(dir / "final.skgf");
  CHECK(snap.grid == cfg.grid.make());
  CHECK(snap.components.size() == 5);
  fs::remove_all(dir);
}
