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

#include <functional>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "qsky/grid.hpp"
#include "qsky/modes.hpp"

namespace qsky {

/// Pauli-frame Stokes components S_k = Tr(rho sigma_k), unnormalized.
struct StokesField {
  ScalarField s0;
  ScalarField sx;
  ScalarField sy;
  ScalarField sz;

  const Grid& grid() const { return s0.grid(); }
  /// (sx, sy, sz) at pixel k.
  Eigen::Vector3d vector_at(std::size_t k) const { return {sx[k], sy[k], sz[k]}; }
};

/// Unit Stokes 3-vectors with a validity mask. Invalid pixels hold (0, 0, 0).
struct UnitStokesField {
  Field<Eigen::Vector3d> n;
  MaskField mask;

  const Grid& grid() const { return n.grid(); }
  bool valid(std::size_t k) const { return mask[k] != 0; }
  std::size_t valid_count() const;
};

/// Throws std::domain_error if any component's imaginary residue exceeds
/// 1e-10 (times max(1, trace)), which means rho was not Hermitian.
StokesField stokes_from_density(const LocalDensityField& rho);

inline constexpr double kDefaultStokesFloor = 1e-9;

/// Divides each Stokes 3-vector by its length. A pixel is valid when
/// s0 > 0 and |S| > floor * s0, i.e. its degree of polarization clears the
/// floor. Vectors already of unit length to within a few ulp are passed
/// through untouched, which makes the operation idempotent.
UnitStokesField normalize_stokes(const StokesField& s, double floor = kDefaultStokesFloor);

/// Inverse view: s0 = 1 at valid pixels and 0 elsewhere.
StokesField as_stokes(const UnitStokesField& u);

/// Builds a unit field from f(x, y) -> 3-vector; zero vectors are invalid.
UnitStokesField unit_field_from_function(
    const Grid& grid, const std::function<Eigen::Vector3d(double, double)>& f);

/// How the Skyrmion density is discretized.
///
/// solid_angle sums, for every pixel plaquette, the signed areas of the two
/// spherical triangles spanned by its corner vectors,
///   Omega(a, b, c) = 2 atan2(a . (b x c), 1 + a.b + b.c + c.a),
/// so N is the exact degree of the sampled, piecewise-geodesic map and is
/// insensitive to how steep the field is between samples. Each plaquette's
/// area is shared equally among its four corners and divided by the corner's
/// pixel-cell area, so the pixel-cell integral of the density is the total
/// signed area. Plaquettes with an invalid corner contribute nothing.
///
/// central2 / central4 evaluate n . (d_x n x d_y n) with second- or
/// fourth-order central differences and zero the density wherever the
/// stencil leaves the grid or touches an invalid pixel.
enum class DensityScheme { solid_angle, central2, central4 };

const char* to_string(DensityScheme scheme);
DensityScheme density_scheme_from_string(const std::string& name);

ScalarField skyrmion_density(const UnitStokesField& u,
                             DensityScheme scheme = DensityScheme::solid_angle);

struct SkyrmionResult {
  double N = 0.0;
  ScalarField density;
  double valid_fraction = 0.0;
};

struct TopologyOptions {
  double stokes_floor = kDefaultStokesFloor;
  DensityScheme scheme = DensityScheme::solid_angle;
  /// Ignored by solid_angle, whose density is tied to the pixel-cell rule.
  IntegrationRule rule = IntegrationRule::riemann;
  Reduction reduction = Reduction::ordered;
};

/// N = (1 / 4 pi) * integral of the Skyrmion density.
SkyrmionResult skyrmion_number(const UnitStokesField& u, const TopologyOptions& options = {});

/// density -> Stokes -> unit field -> N in one call.
SkyrmionResult skyrmion_number(const LocalDensityField& rho, const TopologyOptions& options = {});

/// Largest angle (radians) between the unit Stokes vector sampled on a
/// circle of the given radius and the circle's mean direction. Samples are
/// bilinear; samples whose cell has an invalid corner are skipped.
/// Throws std::invalid_argument if the ring leaves the grid and
/// std::domain_error if no sample is valid.
double boundary_phi_dependence(const UnitStokesField& u, double ring_radius,
                               std::size_t samples = 720);

/// Bilinear sample of a unit field at (x, y), re-normalized. Returns false
/// if (x, y) lies outside the grid or a cell corner is invalid.
bool sample_unit_field(const UnitStokesField& u, double x, double y, Eigen::Vector3d& out);

/// Smooth map of the plane used to resample a field.
struct PlaneWarp {
  enum class Kind { identity, radial, shear };
  Kind kind = Kind::identity;
  /// radial: rho -> rho (1 + a exp(-rho^2)); shear: (x, y) -> (x + a y, y).
  double a = 0.0;

  static PlaneWarp identity() { return {}; }
  static PlaneWarp radial(double a) { return {Kind::radial, a}; }
  static PlaneWarp shear(double a) { return {Kind::shear, a}; }

  Eigen::Vector2d operator()(double x, double y) const;
  double jacobian(double x, double y) const;
};

/// Returns (N of u, N of u composed with the warp). Pixels whose warped
/// position falls outside the grid or next to an invalid pixel become
/// invalid. Throws std::invalid_argument if the warp's Jacobian is not
/// positive on the grid.
std::pair<double, double> warp_invariance_check(const UnitStokesField& u, const PlaneWarp& warp,
                                                const TopologyOptions& options = {});

/// Resampled field u(warp(x, y)).
UnitStokesField warp_field(const UnitStokesField& u, const PlaneWarp& warp);

/// Mirror image under x -> -x.
UnitStokesField reflect_x(const UnitStokesField& u);

/// (2 sqrt(rho) sin(k phi), 2 sqrt(rho) cos(k phi), rho - 1) / (rho + 1),
/// a unit map of degree k.
Eigen::Vector3d stokes_generic_form(int k, double rho, double phi);

}  // namespace qsky
