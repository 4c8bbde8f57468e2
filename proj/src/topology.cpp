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

#include "qsky/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qsky {

namespace {

using Vec3 = Eigen::Vector3d;

constexpr double kUnitSlack = 8.0 * std::numeric_limits<double>::epsilon();

Vec3 unit_or_zero(const Vec3& v, bool& ok) {
  const double n2 = v.squaredNorm();
  ok = n2 > 0.0 && std::isfinite(n2);
  if (!ok) return Vec3::Zero();
  if (std::abs(n2 - 1.0) <= kUnitSlack) return v;
  return v / std::sqrt(n2);
}

UnitStokesField assemble(const Grid& grid, std::vector<Vec3> n, std::vector<std::uint8_t> mask) {
  return UnitStokesField{Field<Vec3>(grid, std::move(n)), MaskField(grid, std::move(mask))};
}

}  // namespace

std::size_t UnitStokesField::valid_count() const {
  std::size_t c = 0;
  for (auto m : mask.values()) c += m != 0;
  return c;
}

StokesField stokes_from_density(const LocalDensityField& rho) {
  const Grid& grid = rho.grid();
  std::vector<double> s0(grid.size()), sx(grid.size()), sy(grid.size()), sz(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Eigen::Matrix2cd& m = rho[k];
    const std::complex<double> t0 = m(0, 0) + m(1, 1);
    const std::complex<double> t1 = m(0, 1) + m(1, 0);
    // Tr(rho sigma_2) with sigma_2 = [[0, -i], [i, 0]].
    const std::complex<double> t2 = std::complex<double>(0, 1) * (m(0, 1) - m(1, 0));
    const std::complex<double> t3 = m(0, 0) - m(1, 1);
    const double tol = 1e-10 * std::max(1.0, std::abs(t0.real()));
    const double residue =
        std::max({std::abs(t0.imag()), std::abs(t1.imag()), std::abs(t2.imag()), std::abs(t3.imag())});
    if (residue > tol) {
      std::ostringstream msg;
      msg << "stokes_from_density: imaginary residue " << residue << " at pixel ("
          << grid.column(k) << ", " << grid.row(k) << "); density is not Hermitian";
      throw std::domain_error(msg.str());
    }
    s0[k] = t0.real();
    sx[k] = t1.real();
    sy[k] = t2.real();
    sz[k] = t3.real();
  }
  return StokesField{ScalarField(grid, std::move(s0)), ScalarField(grid, std::move(sx)),
                     ScalarField(grid, std::move(sy)), ScalarField(grid, std::move(sz))};
}

UnitStokesField normalize_stokes(const StokesField& s, double floor) {
  const Grid& grid = s.grid();
  std::vector<Vec3> n(grid.size());
  std::vector<std::uint8_t> mask(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3 v = s.vector_at(k);
    const double s0 = s.s0[k];
    if (!(s0 > 0.0) || !(v.norm() > floor * s0)) {
      n[k] = Vec3::Zero();
      mask[k] = 0;
      continue;
    }
    bool ok = false;
    n[k] = unit_or_zero(v, ok);
    mask[k] = ok ? 1 : 0;
  }
  return assemble(grid, std::move(n), std::move(mask));
}

StokesField as_stokes(const UnitStokesField& u) {
  const Grid& grid = u.grid();
  std::vector<double> s0(grid.size()), sx(grid.size()), sy(grid.size()), sz(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    s0[k] = u.valid(k) ? 1.0 : 0.0;
    sx[k] = u.n[k].x();
    sy[k] = u.n[k].y();
    sz[k] = u.n[k].z();
  }
  return StokesField{ScalarField(grid, std::move(s0)), ScalarField(grid, std::move(sx)),
                     ScalarField(grid, std::move(sy)), ScalarField(grid, std::move(sz))};
}

UnitStokesField unit_field_from_function(const Grid& grid,
                                         const std::function<Eigen::Vector3d(double, double)>& f) {
  std::vector<Vec3> n(grid.size());
  std::vector<std::uint8_t> mask(grid.size());
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const std::size_t k = grid.index(i, j);
      bool ok = false;
      n[k] = unit_or_zero(f(grid.x(i), grid.y(j)), ok);
      mask[k] = ok ? 1 : 0;
    }
  }
  return assemble(grid, std::move(n), std::move(mask));
}

namespace {

// Corners on one great circle that span more than a half-turn (an antipodal
// pair, say) sit on the branch cut of atan2, where rounding alone would pick
// +-2 pi. Such a triangle has no orientation; it counts as zero.
double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double triple = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  if (den <= 0.0 && std::abs(triple) <= 1e-12) return 0.0;
  return 2.0 * std::atan2(triple, den);
}

ScalarField solid_angle_density(const UnitStokesField& u) {
  const Grid& g = u.grid();
  // Plaquette (i, j) has corners (i, j), (i+1, j), (i+1, j+1), (i, j+1),
  // counter-clockwise in the plane.
  const std::size_t px = g.nx - 1;
  const std::size_t py = g.ny - 1;
  std::vector<double> area(px * py, 0.0);
  const auto npy = static_cast<std::int64_t>(py);
#pragma omp parallel for schedule(static)
  for (std::int64_t jj = 0; jj < npy; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    for (std::size_t i = 0; i < px; ++i) {
      const std::size_t k1 = g.index(i, j), k2 = g.index(i + 1, j);
      const std::size_t k3 = g.index(i + 1, j + 1), k4 = g.index(i, j + 1);
      if (!(u.valid(k1) && u.valid(k2) && u.valid(k3) && u.valid(k4))) continue;
      area[j * px + i] = triangle_area(u.n[k1], u.n[k2], u.n[k3]) +
                         triangle_area(u.n[k1], u.n[k3], u.n[k4]);
    }
  }
  std::vector<double> out(g.size(), 0.0);
  const auto ny = static_cast<std::int64_t>(g.ny);
#pragma omp parallel for schedule(static)
  for (std::int64_t jj = 0; jj < ny; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double wy = (j == 0 || j == g.ny - 1) ? 0.5 * g.dy : g.dy;
    for (std::size_t i = 0; i < g.nx; ++i) {
      double s = 0.0;
      if (i > 0 && j > 0) s += area[(j - 1) * px + (i - 1)];
      if (i < px && j > 0) s += area[(j - 1) * px + i];
      if (i > 0 && j < py) s += area[j * px + (i - 1)];
      if (i < px && j < py) s += area[j * px + i];
      const double wx = (i == 0 || i == g.nx - 1) ? 0.5 * g.dx : g.dx;
      out[g.index(i, j)] = 0.25 * s / (wx * wy);
    }
  }
  return ScalarField(g, std::move(out));
}

ScalarField central_density(const UnitStokesField& u, std::size_t reach) {
  const Grid& g = u.grid();
  std::vector<double> out(g.size(), 0.0);
  if (g.nx <= 2 * reach || g.ny <= 2 * reach) return ScalarField(g, std::move(out));
  const auto ny = static_cast<std::int64_t>(g.ny);
  const auto r = static_cast<std::int64_t>(reach);

#pragma omp parallel for schedule(static)
  for (std::int64_t jj = r; jj < ny - r; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    for (std::size_t i = reach; i + reach < g.nx; ++i) {
      bool ok = u.valid(g.index(i, j));
      for (std::size_t d = 1; d <= reach && ok; ++d) {
        ok = u.valid(g.index(i - d, j)) && u.valid(g.index(i + d, j)) &&
             u.valid(g.index(i, j - d)) && u.valid(g.index(i, j + d));
      }
      if (!ok) continue;
      auto n = [&](std::size_t a, std::size_t b) -> const Vec3& { return u.n(a, b); };
      Vec3 dx, dy;
      if (reach == 1) {
        dx = (n(i + 1, j) - n(i - 1, j)) / (2.0 * g.dx);
        dy = (n(i, j + 1) - n(i, j - 1)) / (2.0 * g.dy);
      } else {
        dx = (-n(i + 2, j) + 8.0 * n(i + 1, j) - 8.0 * n(i - 1, j) + n(i - 2, j)) / (12.0 * g.dx);
        dy = (-n(i, j + 2) + 8.0 * n(i, j + 1) - 8.0 * n(i, j - 1) + n(i, j - 2)) / (12.0 * g.dy);
      }
      out[g.index(i, j)] = n(i, j).dot(dx.cross(dy));
    }
  }
  return ScalarField(g, std::move(out));
}

}  // namespace

const char* to_string(DensityScheme scheme) {
  switch (scheme) {
    case DensityScheme::solid_angle: return "solid_angle";
    case DensityScheme::central2: return "central2";
    case DensityScheme::central4: return "central4";
  }
  return "?";
}

DensityScheme density_scheme_from_string(const std::string& name) {
  if (name == "solid_angle") return DensityScheme::solid_angle;
  if (name == "central2") return DensityScheme::central2;
  if (name == "central4") return DensityScheme::central4;
  throw std::invalid_argument("unknown density scheme '" + name + "'");
}

ScalarField skyrmion_density(const UnitStokesField& u, DensityScheme scheme) {
  switch (scheme) {
    case DensityScheme::solid_angle: return solid_angle_density(u);
    case DensityScheme::central2: return central_density(u, 1);
    case DensityScheme::central4: return central_density(u, 2);
  }
  throw std::logic_error("unhandled density scheme");
}

SkyrmionResult skyrmion_number(const UnitStokesField& u, const TopologyOptions& options) {
  SkyrmionResult r;
  r.density = skyrmion_density(u, options.scheme);
  const IntegrationRule rule =
      options.scheme == DensityScheme::solid_angle ? IntegrationRule::riemann : options.rule;
  r.N = integrate(r.density, rule, options.reduction) / (4.0 * std::numbers::pi);
  r.valid_fraction = static_cast<double>(u.valid_count()) / static_cast<double>(u.grid().size());
  return r;
}

SkyrmionResult skyrmion_number(const LocalDensityField& rho, const TopologyOptions& options) {
  return skyrmion_number(normalize_stokes(stokes_from_density(rho), options.stokes_floor), options);
}

bool sample_unit_field(const UnitStokesField& u, double x, double y, Eigen::Vector3d& out) {
  const Grid& g = u.grid();
  const double fx = (x + g.extent) / g.dx;
  const double fy = (y + g.extent) / g.dy;
  const double last_x = static_cast<double>(g.nx - 1);
  const double last_y = static_cast<double>(g.ny - 1);
  if (!(fx >= 0.0 && fx <= last_x && fy >= 0.0 && fy <= last_y)) return false;
  const auto i0 = std::min(static_cast<std::size_t>(fx), g.nx - 2);
  const auto j0 = std::min(static_cast<std::size_t>(fy), g.ny - 2);
  const double tx = fx - static_cast<double>(i0);
  const double ty = fy - static_cast<double>(j0);
  for (std::size_t dj = 0; dj < 2; ++dj) {
    for (std::size_t di = 0; di < 2; ++di) {
      if (!u.valid(g.index(i0 + di, j0 + dj))) return false;
    }
  }
  const Vec3 v = (1 - tx) * (1 - ty) * u.n(i0, j0) + tx * (1 - ty) * u.n(i0 + 1, j0) +
                 (1 - tx) * ty * u.n(i0, j0 + 1) + tx * ty * u.n(i0 + 1, j0 + 1);
  bool ok = false;
  out = unit_or_zero(v, ok);
  return ok;
}

double boundary_phi_dependence(const UnitStokesField& u, double ring_radius, std::size_t samples) {
  const Grid& g = u.grid();
  if (!(ring_radius > 0.0) || ring_radius > g.extent) {
    std::ostringstream msg;
    msg << "ring radius " << ring_radius << " is outside the grid half-width " << g.extent;
    throw std::invalid_argument(msg.str());
  }
  if (samples < 8) throw std::invalid_argument("boundary_phi_dependence needs at least 8 samples");
  std::vector<Vec3> ring;
  ring.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(samples);
    Vec3 v;
    if (sample_unit_field(u, ring_radius * std::cos(phi), ring_radius * std::sin(phi), v)) {
      ring.push_back(v);
    }
  }
  if (ring.empty()) throw std::domain_error("no valid samples on the boundary ring");
  Vec3 mean = Vec3::Zero();
  for (const auto& v : ring) mean += v;
  if (mean.norm() == 0.0) return std::numbers::pi;
  mean.normalize();
  double worst = 0.0;
  for (const auto& v : ring) worst = std::max(worst, std::atan2(v.cross(mean).norm(), v.dot(mean)));
  return worst;
}

Eigen::Vector2d PlaneWarp::operator()(double x, double y) const {
  switch (kind) {
    case Kind::identity:
      return {x, y};
    case Kind::radial: {
      const double s = 1.0 + a * std::exp(-(x * x + y * y));
      return {s * x, s * y};
    }
    case Kind::shear:
      return {x + a * y, y};
  }
  throw std::logic_error("unhandled warp kind");
}

double PlaneWarp::jacobian(double x, double y) const {
  switch (kind) {
    case Kind::identity:
    case Kind::shear:
      return 1.0;
    case Kind::radial: {
      // rho -> f(rho) = rho (1 + a e^{-rho^2}); det J = f'(rho) f(rho) / rho.
      const double r2 = x * x + y * y;
      const double e = std::exp(-r2);
      return (1.0 + a * e * (1.0 - 2.0 * r2)) * (1.0 + a * e);
    }
  }
  throw std::logic_error("unhandled warp kind");
}

UnitStokesField warp_field(const UnitStokesField& u, const PlaneWarp& warp) {
  const Grid& g = u.grid();
  std::vector<Vec3> n(g.size(), Vec3::Zero());
  std::vector<std::uint8_t> mask(g.size(), 0);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double jac = warp.jacobian(g.x(i), g.y(j));
      if (!(jac > 0.0)) {
        std::ostringstream msg;
        msg << "warp is not orientation preserving at (" << g.x(i) << ", " << g.y(j)
            << "), Jacobian " << jac;
        throw std::invalid_argument(msg.str());
      }
      const Eigen::Vector2d w = warp(g.x(i), g.y(j));
      Vec3 v;
      if (sample_unit_field(u, w.x(), w.y(), v)) {
        n[g.index(i, j)] = v;
        mask[g.index(i, j)] = 1;
      }
    }
  }
  return assemble(g, std::move(n), std::move(mask));
}

std::pair<double, double> warp_invariance_check(const UnitStokesField& u, const PlaneWarp& warp,
                                                const TopologyOptions& options) {
  const double before = skyrmion_number(u, options).N;
  const double after = skyrmion_number(warp_field(u, warp), options).N;
  return {before, after};
}

UnitStokesField reflect_x(const UnitStokesField& u) {
  const Grid& g = u.grid();
  std::vector<Vec3> n(g.size());
  std::vector<std::uint8_t> mask(g.size());
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      n[g.index(i, j)] = u.n(g.nx - 1 - i, j);
      mask[g.index(i, j)] = u.mask(g.nx - 1 - i, j);
    }
  }
  return assemble(g, std::move(n), std::move(mask));
}

Eigen::Vector3d stokes_generic_form(int k, double rho, double phi) {
  if (!(rho >= 0.0)) throw std::invalid_argument("stokes_generic_form: rho must be non-negative");
  const double d = rho + 1.0;
  const double r = 2.0 * std::sqrt(rho) / d;
  return {r * std::sin(k * phi), r * std::cos(k * phi), (rho - 1.0) / d};
}

}  // namespace qsky
