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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qsky/channels.hpp"
#include "qsky/config.hpp"
#include "qsky/oracle.hpp"
#include "qsky/topology.hpp"

namespace qsky {

struct ResultRow {
  std::string experiment;
  std::string channel;
  std::optional<double> sweep_value;
  int l1 = 0;
  int l2 = 0;
  double n_initial = 0.0;
  double n_final = 0.0;
  double valid_fraction = 0.0;
  bool singular = false;
  std::optional<double> boundary_phi;
  double wall_time = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
};

/// build_state -> normalize_trace -> skyrmion_number. Every experiment takes
/// its N_initial from here.
SkyrmionResult clean_skyrmion_number(const StateSpec& state, const Grid& grid,
                                     const TopologyOptions& options = {});

/// Clean state pushed through a channel, renormalized and measured.
SkyrmionResult noisy_skyrmion_number(const StateSpec& state, const KrausChannel& channel,
                                     const TopologyOptions& topology = {},
                                     const ApplyOptions& apply = {});

/// p values at which the family's output loses its topology: 1/2 for the
/// flips, 1 for depolarizing and phase damping, both for amplitude damping.
std::vector<double> singular_points(ChannelFamily family);

/// Depolarizer with the cutoff ramp profile.
KrausChannel compactification_channel(const Grid& grid, const CutoffSpec& cutoff);

ExperimentResult run_topology_table(const ExperimentConfig& config);
ExperimentResult run_p_sweep(const ExperimentConfig& config);
ExperimentResult run_homotopy_trace(const ExperimentConfig& config);
ExperimentResult run_compactification_break(const ExperimentConfig& config);

/// One state (the config's state block) through run.channel. With a dump
/// directory, writes initial.skgf and final.skgf holding s0, sx, sy, sz and
/// the Skyrmion density.
ExperimentResult run_simulate(const ExperimentConfig& config,
                              const std::optional<std::filesystem::path>& dump_dir = {});

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::optional<std::filesystem::path>& dump_dir = {});

struct OracleResidual {
  oracle::Family family = oracle::Family::bit_flip;
  std::size_t samples = 0;
  /// max over samples of |S_pipeline - S_closed| / |S_closed|.
  double max_relative_error = 0.0;
  double worst_rho = 0.0;
  double worst_phi = 0.0;
  double worst_p = 0.0;
};

inline constexpr std::uint64_t kOracleSeed = 20260101;

/// Random (rho, phi, p) samples with rho in [0.1, 3.5]. Each sample's local
/// density goes through apply_channel (no renormalization) and
/// stokes_from_density and is compared with the closed form.
OracleResidual oracle_residual(oracle::Family family, std::size_t samples = 200,
                               std::uint64_t seed = kOracleSeed);

}  // namespace qsky
