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

// Experiment configuration. The on-disk format is YAML; docs/config.md in
// the repository lists every key.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsky/channels.hpp"
#include "qsky/modes.hpp"
#include "qsky/profiles.hpp"
#include "qsky/topology.hpp"

namespace qsky {

inline constexpr std::size_t kDefaultResolution = 512;
inline constexpr double kDefaultExtent = 12.0;

struct GridSpec {
  std::size_t nx = kDefaultResolution;
  std::size_t ny = kDefaultResolution;
  double extent = kDefaultExtent;

  Grid make() const { return make_grid(nx, ny, extent); }
};

/// One named channel block. `params` holds the profile for each parameter
/// the family needs (p; theta/varphi/psi; theta/psi/q/r). Convex blocks
/// list (channel name, weight) pairs instead.
struct ChannelSpec {
  std::string name;
  ChannelFamily family = ChannelFamily::identity;
  std::map<std::string, NoiseProfile> params;
  std::vector<std::pair<std::string, double>> components;
};

enum class ExperimentKind { simulate, topology_table, p_sweep, homotopy, compactify };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct CutoffSpec {
  double radius = 1.2;
  double p0 = 0.1;
  double order = 8.0;
};

struct RunSpec {
  ExperimentKind experiment = ExperimentKind::simulate;
  std::string channel;
  std::vector<int> topologies = {-3, -2, -1, 1, 2, 3};
  std::vector<double> sweep_values;
  std::vector<double> t_samples = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::filesystem::path output = "results.csv";
  bool deterministic = true;
  double trace_floor = 1e-300;
  double stokes_floor = kDefaultStokesFloor;
  DensityScheme scheme = DensityScheme::solid_angle;
  CutoffSpec cutoff;
  /// Ring for boundary_phi_dependence; defaults to extent - 0.2, or to the
  /// cutoff radius for compactify.
  std::optional<double> ring_radius;
  /// Overrides of the target-N -> (l1, l2) mapping.
  std::map<int, std::pair<int, int>> mapping;
};

struct ExperimentConfig {
  GridSpec grid;
  StateSpec state;
  std::vector<ChannelSpec> channels;
  RunSpec run;

  /// Throws std::invalid_argument on dangling channel references, missing
  /// profile parameters, or sweep values outside [0, 1].
  void validate() const;
  const ChannelSpec& channel(const std::string& name) const;
  StateSpec state_for(int target) const;
  TopologyOptions topology_options() const;
  ApplyOptions apply_options() const;
};

ExperimentConfig parse_config(const std::string& yaml_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Builds a named channel on the given grid (convex blocks recursively).
KrausChannel build_channel(const ExperimentConfig& config, const std::string& name,
                           const Grid& grid);

/// Profiles of a retarder or diattenuator block, for homotopies.
RetarderProfiles retarder_profiles(const ChannelSpec& spec);
DiattenuatorProfiles diattenuator_profiles(const ChannelSpec& spec);

}  // namespace qsky
