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

#include "qsky/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace qsky::oracle {

namespace {

using LD = long double;
using CLD = std::complex<long double>;

constexpr std::size_t kMaxBruteForcePixels = 32 * 32;

}  // namespace

Family family_from_string(const std::string& name) {
  if (name == "bit_flip") return Family::bit_flip;
  if (name == "amp_damp" || name == "amplitude_damping") return Family::amp_damp;
  if (name == "phase_damp" || name == "phase_damping") return Family::phase_damp;
  throw std::invalid_argument("no closed form for family '" + name + "'");
}

const char* to_string(Family family) {
  switch (family) {
    case Family::bit_flip: return "bit_flip";
    case Family::amp_damp: return "amp_damp";
    case Family::phase_damp: return "phase_damp";
  }
  return "?";
}

StateSpec reference_state() { return StateSpec{1, 12, 0.0}; }

Eigen::Vector3d analytic_stokes(Family family, double p_in, double rho_in, double phi_in) {
  if (!(p_in >= 0.0 && p_in <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (!(rho_in >= 0.0)) throw std::invalid_argument("rho must be non-negative");
  const LD p = p_in;
  const LD rho = rho_in;
  const CLD i(0, 1);
  const LD pi = std::numbers::pi_v<LD>;
  const LD w0 = 1;
  const LD surd = std::sqrt(LD(2) / LD(231));
  const CLD phase = std::exp(CLD(-2 * rho * rho / (w0 * w0), 0) - LD(11) * i * LD(phi_in));
  const CLD e22 = std::exp(LD(22) * i * LD(phi_in));
  const LD r13 = std::pow(rho, 13);
  const LD r22 = std::pow(rho, 22);
  const LD w15 = std::pow(w0, 15);
  const LD gauss = std::exp(-2 * rho * rho / (w0 * w0));

  CLD sx, sy;
  LD sz = 0;
  switch (family) {
    case Family::bit_flip:
      sx = LD(4) * surd * r13 * (LD(1) + e22) * phase / (LD(45) * pi * w15);
      sy = -(LD(4) * i * surd * (2 * p - 1) * r13 * (LD(-1) + e22) * phase) / (LD(45) * pi * w15);
      sz = 4 * (2 * p - 1) * rho * rho * gauss * (467775 * std::pow(w0, 22) - 2 * r22) /
           (467775 * pi * std::pow(w0, 26));
      break;
    case Family::amp_damp:
      sx = LD(4) * surd * std::sqrt(1 - p) * r13 * (LD(1) + e22) * phase / (LD(45) * pi * w15);
      sy = -(LD(4) * i * surd * std::sqrt(1 - p) * r13 * (LD(-1) + e22) * phase) /
           (LD(45) * pi * w15);
      sz = 4 * rho * rho * gauss * (2 * (2 * p - 1) * r22 + 467775 * std::pow(w0, 22)) /
           (467775 * pi * std::pow(w0, 26));
      break;
    case Family::phase_damp:
      sx = LD(4) * surd * std::sqrt(1 - p) * r13 * (LD(1) + e22) * phase / (LD(45) * pi * w15);
      sy = -(LD(4) * i * surd * std::sqrt(1 - p) * r13 * (LD(-1) + e22) * phase) /
           (LD(45) * pi * w15);
      sz = 4 * rho * rho * gauss * (467775 * std::pow(w0, 22) - 2 * r22) /
           (467775 * pi * std::pow(w0, 26));
      break;
  }
  return {static_cast<double>(sx.real()), static_cast<double>(sy.real()), static_cast<double>(sz)};
}

LocalDensityField brute_force_apply(const LocalDensityField& rho, const KrausChannel& ch) {
  require_same_grid(rho.grid(), ch.grid(), "brute_force_apply");
  const Grid& grid = rho.grid();
  if (grid.size() > kMaxBruteForcePixels) {
    throw std::invalid_argument("brute_force_apply is limited to 32 x 32 pixels");
  }
  std::vector<Eigen::Matrix2cd> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::complex<double> acc[2][2] = {};
    for (const auto& group : ch.groups()) {
      for (const auto& op : group.ops) {
        const Eigen::Matrix2cd& e = op[k];
        const Eigen::Matrix2cd& r = rho[k];
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            std::complex<double> s = 0;
            for (int c = 0; c < 2; ++c) {
              for (int d = 0; d < 2; ++d) s += e(a, c) * r(c, d) * std::conj(e(b, d));
            }
            acc[a][b] += group.weight * s;
          }
        }
      }
    }
    out[k] << acc[0][0], acc[0][1], acc[1][0], acc[1][1];
  }
  return LocalDensityField(grid, std::move(out));
}

LocalDensityField depolarizing_affine(const LocalDensityField& rho, const ScalarField& p) {
  require_same_grid(rho.grid(), p.grid(), "depolarizing_affine");
  std::vector<Eigen::Matrix2cd> out(rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const std::complex<double> tr = rho[k](0, 0) + rho[k](1, 1);
    out[k] = (1.0 - p[k]) * rho[k];
    out[k](0, 0) += 0.5 * p[k] * tr;
    out[k](1, 1) += 0.5 * p[k] * tr;
  }
  return LocalDensityField(rho.grid(), std::move(out));
}

}  // namespace qsky::oracle
