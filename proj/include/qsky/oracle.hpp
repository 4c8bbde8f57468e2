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

// Reference values that do not share code with the main pipeline.

#include <string>

#include <Eigen/Core>

#include "qsky/channels.hpp"
#include "qsky/modes.hpp"

namespace qsky::oracle {

enum class Family { bit_flip, amp_damp, phase_damp };

Family family_from_string(const std::string& name);
const char* to_string(Family family);

/// Closed-form unnormalized (Sx, Sy, Sz) of the charge-(12, 1) state under a
/// constant-p channel, w0 = 1. The expressions are evaluated as written, in
/// complex long double, and the real parts returned.
///
/// The closed forms put the charge-1 mode on |H> and the charge-12 mode on
/// |V>, so they correspond to StateSpec{1, 12, 0} in this library's
/// (H, V) ordering; reference_state() returns that spec.
Eigen::Vector3d analytic_stokes(Family family, double p, double rho, double phi);

StateSpec reference_state();

/// Per-pixel operator sum with explicit scalar loops, no renormalization.
/// Throws std::invalid_argument for grids above 32 x 32 pixels.
LocalDensityField brute_force_apply(const LocalDensityField& rho, const KrausChannel& ch);

/// rho -> (p/2) tr(rho) I + (1 - p) rho, evaluated pointwise.
LocalDensityField depolarizing_affine(const LocalDensityField& rho, const ScalarField& p);

}  // namespace qsky::oracle
