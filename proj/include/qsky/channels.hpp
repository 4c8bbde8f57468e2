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

#include <string>
#include <vector>

#include <Eigen/Core>

#include "qsky/grid.hpp"
#include "qsky/modes.hpp"
#include "qsky/profiles.hpp"

namespace qsky {

using KrausOperatorField = ComplexMatrixField;

enum class ChannelFamily {
  identity,
  retarder,
  diattenuator,
  bit_flip,
  phase_flip,
  depolarizing,
  amplitude_damping,
  phase_damping,
  convex,
};

const char* to_string(ChannelFamily family);
ChannelFamily channel_family_from_string(const std::string& name);

/// Kraus operators sharing one mixing weight.
struct KrausGroup {
  double weight = 1.0;
  std::vector<KrausOperatorField> ops;
};

/// Position-dependent operator sum
///   rho -> sum_g w_g sum_l K_{g,l} rho K_{g,l}^dagger.
/// Parameters are baked into per-pixel operator fields at construction, so a
/// channel is plain immutable data bound to one Grid.
class KrausChannel {
 public:
  /// Throws std::invalid_argument for empty groups, mismatched grids,
  /// negative weights, or weights not summing to 1 within 1e-12.
  KrausChannel(std::string name, ChannelFamily family, std::vector<KrausGroup> groups,
               bool trace_preserving);

  const std::string& name() const { return name_; }
  ChannelFamily family() const { return family_; }
  bool trace_preserving() const { return trace_preserving_; }
  const std::vector<KrausGroup>& groups() const { return groups_; }
  const Grid& grid() const { return grid_; }
  std::size_t operator_count() const;

  /// Operator sum at pixel k, no renormalization.
  Eigen::Matrix2cd apply_at(std::size_t k, const Eigen::Matrix2cd& rho) const;
  /// sum_g w_g sum_l K^dagger K at pixel k.
  Eigen::Matrix2cd completeness_at(std::size_t k) const;

 private:
  std::string name_;
  ChannelFamily family_;
  std::vector<KrausGroup> groups_;
  bool trace_preserving_;
  Grid grid_;
};

struct RetarderProfiles {
  NoiseProfile theta;
  NoiseProfile varphi;
  NoiseProfile psi;
};

struct DiattenuatorProfiles {
  NoiseProfile theta;
  NoiseProfile psi;
  NoiseProfile q = NoiseProfile::constant(1.0);
  NoiseProfile r = NoiseProfile::constant(1.0);
};

KrausChannel identity_channel(const Grid& grid);
KrausChannel channel_retarder(const Grid& grid, const RetarderProfiles& profiles);
/// Throws std::invalid_argument if q or r leave (0, 1] anywhere on the grid.
KrausChannel channel_diattenuator(const Grid& grid, const DiattenuatorProfiles& profiles);

// Probability-driven families. All throw std::invalid_argument naming the
// first pixel where p leaves [0, 1].

/// E0 = sqrt(p) I, E1 = sqrt(1-p) X. Note p = 1 is the noiseless end.
KrausChannel channel_bit_flip(const Grid& grid, const NoiseProfile& p);
/// E0 = sqrt(p) I, E1 = sqrt(1-p) Z.
KrausChannel channel_phase_flip(const Grid& grid, const NoiseProfile& p);
/// {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}, equivalent to
/// rho -> (p/2) tr(rho) I + (1-p) rho.
KrausChannel channel_depolarizing(const Grid& grid, const NoiseProfile& p);
/// E0 = diag(1, sqrt(1-p)), E1 = [[0, sqrt(p)], [0, 0]].
KrausChannel channel_amplitude_damping(const Grid& grid, const NoiseProfile& p);
/// E0 = diag(1, sqrt(1-p)), E1 = diag(0, sqrt(p)).
KrausChannel channel_phase_damping(const Grid& grid, const NoiseProfile& p);

/// Builds any probability-driven family by enum.
KrausChannel channel_from_probability(ChannelFamily family, const Grid& grid, const NoiseProfile& p);

/// Weighted concatenation. Throws if the weights are negative or do not sum
/// to 1 within 1e-12; more than four weights only logs a warning.
KrausChannel convex_combine(const std::vector<KrausChannel>& channels,
                            const std::vector<double>& weights, std::string name = "convex");

struct ApplyOptions {
  bool renormalize = true;
  /// Pixels with trace <= trace_floor * (max trace over the field) are dark
  /// and come out as the zero matrix.
  double trace_floor = 1e-300;
};

LocalDensityField apply_channel(const LocalDensityField& rho, const KrausChannel& ch,
                                const ApplyOptions& options = {});

/// Pointwise rho / tr(rho) with the same dark-pixel rule as apply_channel.
LocalDensityField normalize_trace(const LocalDensityField& rho, double trace_floor = 1e-300);

enum class CptpClass { trace_preserving, trace_decreasing, invalid };
const char* to_string(CptpClass c);

struct CptpReport {
  CptpClass classification = CptpClass::trace_preserving;
  /// max over pixels of the largest |eigenvalue(sum K^dagger K) - 1|.
  double max_deviation = 0.0;
  double max_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;
  std::size_t worst_pixel = 0;
};

CptpReport verify_cptp(const KrausChannel& ch, double tol = 1e-10);

enum class HomotopyFamily { retarder, diattenuator };

/// Channel at time t of the straight-line deformation from the identity:
/// angles scale as t * angle, transmittances as (1 - t) + t * q.
/// Throws std::invalid_argument for t outside [0, 1].
KrausChannel homotopy_channel(const Grid& grid, const RetarderProfiles& profiles, double t);
KrausChannel homotopy_channel(const Grid& grid, const DiattenuatorProfiles& profiles, double t);

}  // namespace qsky
