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

#include <Eigen/LU>

#include "qsky/channels.hpp"
#include "qsky/modes.hpp"

using namespace qsky;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Textbook p = 0 Laguerre-Gauss mode at w0 = 1, evaluated directly.
std::complex<double> lg_direct(int l, double rho, double phi) {
  const int m = std::abs(l);
  double fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  const double mag = std::sqrt(2.0 / (std::numbers::pi * fact)) *
                     std::pow(std::sqrt(2.0) * rho, m) * std::exp(-rho * rho);
  return std::polar(mag, l * phi);
}

}  // namespace

TEST_CASE("lg_mode matches the direct formula") {
  for (int l : {-5, -1, 0, 1, 2, 3, 12}) {
    for (double rho : {0.0, 0.3, 1.0, 2.2}) {
      const auto a = lg_mode(l, 1.0, rho, 0.7);
      const auto b = lg_direct(l, rho, 0.7);
      CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("lg_mode is unit-normalized") {
  const Grid g = make_grid(401, 401, 6.0);
  for (int l : {0, 1, -3, 8}) {
    const auto intensity = ScalarField::generate(g, [l](double x, double y) {
      return std::norm(lg_mode(l, 1.0, std::hypot(x, y), std::atan2(y, x)));
    });
    CHECK_THAT(integrate(intensity), WithinRel(1.0, 1e-9));
  }
}

TEST_CASE("lg_mode supports high charges without overflow") {
  const auto v = lg_mode(30, 1.0, 3.0, 0.0);
  CHECK(std::isfinite(v.real()));
  CHECK_THROWS_AS(lg_mode(31, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lg_mode(1, 1.0, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("local density is a rank-one projector scaled by the intensity") {
  const StateSpec s{2, -1, 0.4};
  const auto rho = local_density(s, 0.3, -0.8);
  CHECK((rho - rho.adjoint()).norm() < 1e-15);
  CHECK(std::abs(rho.determinant()) < 1e-15);
  const auto amp = polarization_amplitudes(s, 0.3, -0.8);
  CHECK_THAT(rho.trace().real(), WithinRel(amp.squaredNorm(), 1e-14));
}

TEST_CASE("alpha adds a relative phase on the V component") {
  const auto a = polarization_amplitudes({1, 0, 0.0}, 0.5, 0.2);
  const auto b = polarization_amplitudes({1, 0, 1.1}, 0.5, 0.2);
  CHECK(std::abs(a(0) - b(0)) == 0.0);
  CHECK(std::abs(b(1) - std::polar(1.0, 1.1) * a(1)) < 1e-16);
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS((StateSpec{31, 0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StateSpec{1, 0, 7.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((StateSpec{1, 0, -0.1}.validate()), std::invalid_argument);
  CHECK_NOTHROW((StateSpec{-30, 30, 6.2}.validate()));
}

TEST_CASE("target winding follows the charge with the larger magnitude") {
  CHECK(StateSpec{1, 0}.target_winding() == 1);
  CHECK(StateSpec{-2, 0}.target_winding() == -2);
  CHECK(StateSpec{0, 1}.target_winding() == 1);
  CHECK(StateSpec{0, -3}.target_winding() == -3);
  CHECK(StateSpec{3, 1}.target_winding() == 2);
  CHECK(StateSpec{1, 12}.target_winding() == 11);
  CHECK(StateSpec{2, 2}.target_winding() == 0);
  CHECK(StateSpec{2, -2}.target_winding() == 0);
  CHECK(StateSpec{2, 2}.product_like());
  for (int n : {-3, -2, -1, 1, 2, 3}) CHECK(state_for_winding(n).target_winding() == n);
}

TEST_CASE("lg_mode reference values") {
  CHECK(std::abs(lg_mode(0, 1.0, 0.0, 0.3) - std::sqrt(2.0 / std::numbers::pi)) < 1e-15);
  CHECK(std::abs(lg_mode(1, 1.0, 0.0, 0.3)) == 0.0);
  const auto v = lg_mode(2, 1.0, 1.0, std::numbers::pi / 4);
  CHECK_THAT(std::abs(v), WithinRel(std::sqrt(2.0 / (std::numbers::pi * 2.0)) * 2.0 * std::exp(-1.0), 1e-14));
  CHECK_THAT(std::arg(v), WithinAbs(std::numbers::pi / 2, 1e-14));
}

TEST_CASE("build_state reference pixels") {
  const Grid g = make_grid(17, 17, 2.0);  // pixel (8, 8) is the origin
  const auto a = build_state({1, 0, 0.0}, g);
  CHECK(std::abs(a(8, 8)(0, 0)) == 0.0);
  CHECK(std::abs(a(8, 8)(0, 1)) == 0.0);
  CHECK_THAT(a(8, 8)(1, 1).real(), WithinRel(2.0 / std::numbers::pi, 1e-14));
  const auto b = normalize_trace(build_state({0, 0, 0.0}, g));
  const Eigen::Matrix2cd plus = Eigen::Matrix2cd::Constant(0.5);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK((b[k] - plus).norm() <= 1e-14);
}
