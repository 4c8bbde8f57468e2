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

#include "qsky/grid.hpp"

namespace qsky {

enum class ProfileFamily { constant, gauss_cos, cutoff_ramp };

/// Smooth scalar channel parameter over the plane.
///
///   constant:    offset
///   gauss_cos:   offset + (amplitude + modulation * cos(n phi)) * exp(-decay rho^2)
///   cutoff_ramp: 1 - (1 - offset) * exp(-(rho / radius)^order)
///
/// gauss_cos covers every position-dependent form used for the channels
/// (angles with amplitude = 0, probabilities with offset = 0, transmittances
/// with offset = 1 and negative amplitude). cutoff_ramp is a probability that
/// sits near `offset` inside `radius` and saturates at 1 outside it.
struct NoiseProfile {
  ProfileFamily family = ProfileFamily::constant;
  double offset = 0.0;
  double amplitude = 0.0;
  double modulation = 0.0;
  int n = 0;
  double decay = 1.0;
  double radius = 1.0;
  double order = 8.0;

  static NoiseProfile constant(double value);
  static NoiseProfile gauss_cos(double amplitude, double modulation, int n, double decay,
                                double offset = 0.0);
  static NoiseProfile cutoff_ramp(double p0, double radius, double order = 8.0);

  double operator()(double rho, double phi) const;
  ScalarField evaluate(const Grid& grid) const;
  std::string describe() const;
};

const char* to_string(ProfileFamily family);
ProfileFamily profile_family_from_string(const std::string& name);

}  // namespace qsky
