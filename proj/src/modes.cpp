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

#include "qsky/modes.hpp"

namespace qsky {

void StateSpec::validate() const {
  if (std::abs(l1) > kMaxOrbitalCharge || std::abs(l2) > kMaxOrbitalCharge) {
    throw std::invalid_argument("orbital charges must satisfy |l| <= " +
                                std::to_string(kMaxOrbitalCharge));
  }
  if (!(alpha >= 0.0 && alpha < 2.0 * std::numbers::pi)) {
    throw std::invalid_argument("alpha must lie in [0, 2 pi)");
  }
}

int StateSpec::target_winding() const {
  const int a1 = std::abs(l1);
  const int a2 = std::abs(l2);
  if (a1 == a2) return 0;
  return a1 > a2 ? l1 - l2 : l2 - l1;
}

Eigen::Vector2cd polarization_amplitudes(const StateSpec& spec, double x, double y) {
  const double rho = std::hypot(x, y);
  const double phi = std::atan2(y, x);
  const std::complex<double> h = lg_mode(spec.l1, 1.0, rho, phi);
  const std::complex<double> v = std::polar(1.0, spec.alpha) * lg_mode(spec.l2, 1.0, rho, phi);
  return {h, v};
}

Eigen::Matrix2cd local_density(const StateSpec& spec, double x, double y) {
  const Eigen::Vector2cd v = polarization_amplitudes(spec, x, y);
  return v * v.adjoint();
}

LocalDensityField build_state(const StateSpec& spec, const Grid& grid) {
  spec.validate();
  return LocalDensityField::generate(grid,
                                     [&](double x, double y) { return local_density(spec, x, y); });
}

StateSpec state_for_winding(int target, double alpha) {
  StateSpec s;
  s.alpha = alpha;
  s.l1 = target;
  s.l2 = 0;
  return s;
}

}  // namespace qsky
