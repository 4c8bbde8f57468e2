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

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "qsky/grid.hpp"

namespace qsky {

inline constexpr int kMaxOrbitalCharge = 30;

/// Radial-index-zero Laguerre-Gaussian mode
///
///   u_l(rho, phi) = sqrt(2 / (pi |l|!)) / w0 * (sqrt(2) rho / w0)^|l|
///                   * exp(-rho^2 / w0^2) * exp(i l phi).
///
/// The magnitude is assembled in log space so large |l| and large rho do not
/// overflow intermediate powers; |l| > 30 is rejected.
template <typename Scalar = double>
std::complex<Scalar> lg_mode(int l, Scalar w0, Scalar rho, Scalar phi) {
  using std::exp;
  using std::log;
  if (std::abs(l) > kMaxOrbitalCharge) {
    throw std::invalid_argument("|l| = " + std::to_string(std::abs(l)) + " exceeds the supported " +
                                std::to_string(kMaxOrbitalCharge));
  }
  if (!(rho >= Scalar(0))) throw std::invalid_argument("lg_mode: rho must be non-negative");
  const int m = std::abs(l);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar log_norm =
      Scalar(0.5) * (log(Scalar(2)) - log(pi) - std::lgamma(Scalar(m + 1))) - log(w0);
  Scalar magnitude;
  if (m == 0) {
    magnitude = exp(log_norm - rho * rho / (w0 * w0));
  } else if (rho == Scalar(0)) {
    magnitude = Scalar(0);
  } else {
    const Scalar radial = std::sqrt(Scalar(2)) * rho / w0;
    magnitude = exp(log_norm + Scalar(m) * log(radial) - rho * rho / (w0 * w0));
  }
  return std::polar(magnitude, Scalar(l) * phi);
}

/// Two-photon Skyrmion state u_{l1}|H> + e^{i alpha} u_{l2}|V>, w0 = 1.
struct StateSpec {
  int l1 = 1;
  int l2 = 0;
  double alpha = 0.0;

  /// Degree of the normalized Stokes map. It equals l1 - l2 when the mode
  /// on |H> has the larger |l|; exchanging H and V is a proper rotation of
  /// the sphere, so the general value is (l1 - l2) * sign(|l1| - |l2|), and
  /// equal |l| gives a map onto a single circle of latitude with degree 0.
  int target_winding() const;
  /// Equal charges give a product-like state with zero winding.
  bool product_like() const { return l1 == l2; }
  /// Throws std::invalid_argument for |l| > 30 or alpha outside [0, 2 pi).
  void validate() const;
};

/// Per-pixel conditional polarization density matrix rho_B = v v^dagger,
/// basis ordering (H, V), no normalization.
using LocalDensityField = ComplexMatrixField;

/// Polarization amplitude vector (u_{l1}, e^{i alpha} u_{l2}) at (x, y).
Eigen::Vector2cd polarization_amplitudes(const StateSpec& spec, double x, double y);

/// rho_B at a single point.
Eigen::Matrix2cd local_density(const StateSpec& spec, double x, double y);

LocalDensityField build_state(const StateSpec& spec, const Grid& grid);

/// State realizing a requested winding: (N, 0) for every N. (0, -N) would
/// wind +|N|, see StateSpec::target_winding.
StateSpec state_for_winding(int target, double alpha = 0.0);

}  // namespace qsky
