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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qsky/channels.hpp"
#include "qsky/experiments.hpp"
#include "qsky/modes.hpp"
#include "qsky/topology.hpp"

using namespace qsky;

namespace {

const Grid kGrid = make_grid(256, 256, 12.0);

UnitStokesField clean_unit(const StateSpec& s, const Grid& g = kGrid) {
  return normalize_stokes(stokes_from_density(normalize_trace(build_state(s, g))));
}

double clean_n(const StateSpec& s, const TopologyOptions& o = {}) {
  return clean_skyrmion_number(s, kGrid, o).N;
}

}  // namespace

TEST_CASE("stokes components follow the Pauli traces") {
  Eigen::Matrix2cd rho;
  rho << 0.6, std::complex<double>(0.1, -0.2), std::complex<double>(0.1, 0.2), 0.4;
  const auto s = stokes_from_density(LocalDensityField::constant(make_grid(16, 16, 1.0), rho));
  CHECK(std::abs(s.s0[0] - 1.0) < 1e-15);
  CHECK(std::abs(s.sx[0] - 0.2) < 1e-15);
  CHECK(std::abs(s.sy[0] - 0.4) < 1e-15);
  CHECK(std::abs(s.sz[0] - 0.2) < 1e-15);
}

TEST_CASE("non-hermitian input is rejected") {
  Eigen::Matrix2cd rho;
  rho << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(stokes_from_density(LocalDensityField::constant(make_grid(16, 16, 1.0), rho)),
                  std::domain_error);
}

TEST_CASE("unpolarized and dark pixels are masked") {
  const Grid g = make_grid(16, 16, 1.0);
  std::vector<Eigen::Matrix2cd> v(g.size(), Eigen::Matrix2cd::Identity() * 0.5);
  v[0](0, 0) = 1.0;
  v[0](1, 1) = 0.0;
  v[1] = Eigen::Matrix2cd::Zero();
  const auto u = normalize_stokes(stokes_from_density(LocalDensityField(g, v)));
  CHECK(u.valid(0));
  CHECK(!u.valid(1));
  CHECK(!u.valid(2));
  CHECK(u.n[2].norm() == 0.0);
  CHECK(u.valid_count() == 1);
}

TEST_CASE("normalization is idempotent") {
  const auto u = clean_unit({-2, 0, 0.3});
  const auto again = normalize_stokes(as_stokes(u));
  for (std::size_t k = 0; k < u.n.size(); ++k) {
    CHECK(again.n[k] == u.n[k]);
    CHECK(again.mask[k] == u.mask[k]);
  }
}

TEST_CASE("clean states recover their winding") {
  for (int n : {-3, -2, -1, 1, 2, 3}) {
    const double got = clean_n(state_for_winding(n));
    CHECK(std::abs(got - n) <= 0.05);
    CHECK(std::abs(got) <= std::abs(n));
  }
  CHECK(std::abs(clean_n({2, 2, 0.0})) <= 1e-12);
  CHECK(std::abs(clean_n({-1, 1, 0.0})) <= 1e-12);
}

TEST_CASE("exchanging the charges keeps N and negating them flips it") {
  for (auto [l1, l2] : {std::pair{1, 0}, std::pair{3, 1}, std::pair{-2, 0}, std::pair{2, -1}}) {
    INFO(l1 << "," << l2);
    const double n = clean_n({l1, l2, 0.0});
    CHECK(std::abs(n - StateSpec{l1, l2}.target_winding()) <= 0.05);
    CHECK(std::abs(clean_n({l2, l1, 0.0}) - n) <= 1e-9);
    CHECK(std::abs(clean_n({-l1, -l2, 0.0}) + n) <= 1e-9);
  }
}

TEST_CASE("alpha does not change N") {
  const double n0 = clean_n({2, 0, 0.0});
  for (double a : {0.5, 2.0, 5.9}) CHECK(std::abs(clean_n({2, 0, a}) - n0) <= 1e-10);
}

TEST_CASE("mirror image has the opposite N") {
  for (auto scheme : {DensityScheme::solid_angle, DensityScheme::central2, DensityScheme::central4}) {
    TopologyOptions o;
    o.scheme = scheme;
    const auto u = clean_unit({3, 0, 0.0});
    CHECK(std::abs(skyrmion_number(u, o).N + skyrmion_number(reflect_x(u), o).N) <= 1e-12);
  }
}

TEST_CASE("generic form has degree k less the cap outside the window") {
  const double extent = 20.0;
  const Grid g = make_grid(801, 801, extent);
  // Beyond the square window the map covers the cap above the boundary
  // image k times: (1 / 4 pi) * k * integral of 2 / (rho_b + 1) dphi, with
  // rho_b(phi) the distance to the window edge.
  double missing = 0.0;
  const int steps = 200000;
  for (int i = 0; i < steps; ++i) {
    const double phi = (i + 0.5) * 2.0 * std::numbers::pi / steps;
    const double rb = extent / std::max(std::abs(std::cos(phi)), std::abs(std::sin(phi)));
    missing += 2.0 / (rb + 1.0) * (2.0 * std::numbers::pi / steps);
  }
  missing /= 4.0 * std::numbers::pi;
  for (int k : {1, 2, -1, -3}) {
    INFO(k);
    const auto u = unit_field_from_function(g, [k](double x, double y) {
      return stokes_generic_form(k, std::hypot(x, y), std::atan2(y, x));
    });
    CHECK(std::abs(skyrmion_number(u).N - k * (1.0 - missing)) <= 0.01);
  }
}

TEST_CASE("central differences converge towards the integer") {
  TopologyOptions o;
  o.scheme = DensityScheme::central2;
  const StateSpec s{1, 0, 0.0};
  const double coarse = clean_skyrmion_number(s, make_grid(128, 128, 6.0), o).N;
  const double fine = clean_skyrmion_number(s, make_grid(512, 512, 6.0), o).N;
  CHECK(std::abs(fine - 1.0) < std::abs(coarse - 1.0));
  o.scheme = DensityScheme::central4;
  const double fine4 = clean_skyrmion_number(s, make_grid(512, 512, 6.0), o).N;
  CHECK(std::abs(fine4 - 1.0) <= 0.05);
}

TEST_CASE("constant retarder leaves the density unchanged pointwise") {
  const auto rho = normalize_trace(build_state({2, 0, 0.0}, kGrid));
  const auto ch = channel_retarder(kGrid, {NoiseProfile::constant(0.9), NoiseProfile::constant(-0.4),
                                           NoiseProfile::constant(2.1)});
  const auto u0 = normalize_stokes(stokes_from_density(rho));
  const auto u1 = normalize_stokes(stokes_from_density(apply_channel(rho, ch)));
  for (auto scheme : {DensityScheme::solid_angle, DensityScheme::central2}) {
    const auto d0 = skyrmion_density(u0, scheme);
    const auto d1 = skyrmion_density(u1, scheme);
    double worst = 0.0;
    for (std::size_t k = 0; k < d0.size(); ++k) worst = std::max(worst, std::abs(d0[k] - d1[k]));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("smooth warps of the plane keep N") {
  const auto u = clean_unit({1, 0, 0.0});
  for (const auto& w : {PlaneWarp::radial(0.3), PlaneWarp::shear(0.4)}) {
    const auto [before, after] = warp_invariance_check(u, w);
    CHECK(std::abs(after - before) <= 0.02);
  }
  CHECK_THROWS_AS(warp_invariance_check(u, PlaneWarp::radial(-2.0)), std::invalid_argument);
}

TEST_CASE("warp jacobians") {
  const auto r = PlaneWarp::radial(0.3);
  const double h = 1e-6;
  const double x = 0.4, y = -0.7;
  const auto dx = (r(x + h, y) - r(x - h, y)) / (2 * h);
  const auto dy = (r(x, y + h) - r(x, y - h)) / (2 * h);
  CHECK(std::abs(dx(0) * dy(1) - dx(1) * dy(0) - r.jacobian(x, y)) <= 1e-8);
  CHECK(PlaneWarp::shear(0.4).jacobian(1.0, 2.0) == 1.0);
}

TEST_CASE("boundary of a compact state is nearly constant") {
  const auto u = clean_unit({3, 0, 0.0});
  CHECK(boundary_phi_dependence(u, kGrid.extent - 0.2) <= 0.05);
  CHECK_THROWS_AS(boundary_phi_dependence(u, kGrid.extent + 1.0), std::invalid_argument);
  CHECK_THROWS_AS(boundary_phi_dependence(u, 0.0), std::invalid_argument);
}

TEST_CASE("boundary of a mid-beam ring varies with phi") {
  CHECK(boundary_phi_dependence(clean_unit({1, 0, 0.0}), 1.0) > 1.0);
}

TEST_CASE("bilinear sampling reproduces grid values") {
  const auto u = clean_unit({1, 0, 0.0});
  Eigen::Vector3d v;
  REQUIRE(sample_unit_field(u, kGrid.x(40), kGrid.y(77), v));
  CHECK((v - u.n(40, 77)).norm() <= 1e-14);
  CHECK(!sample_unit_field(u, 50.0, 0.0, v));
}

TEST_CASE("scheme names round-trip") {
  for (auto s : {DensityScheme::solid_angle, DensityScheme::central2, DensityScheme::central4}) {
    CHECK(density_scheme_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(density_scheme_from_string("spectral"), std::invalid_argument);
}
