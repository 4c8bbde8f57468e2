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

#include "qsky/profiles.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsky {

NoiseProfile NoiseProfile::constant(double value) {
  NoiseProfile p;
  p.offset = value;
  return p;
}

NoiseProfile NoiseProfile::gauss_cos(double amplitude, double modulation, int n, double decay,
                                     double offset) {
  if (decay < 0.0) throw std::invalid_argument("gauss_cos decay must be non-negative");
  NoiseProfile p;
  p.family = ProfileFamily::gauss_cos;
  p.offset = offset;
  p.amplitude = amplitude;
  p.modulation = modulation;
  p.n = n;
  p.decay = decay;
  return p;
}

NoiseProfile NoiseProfile::cutoff_ramp(double p0, double radius, double order) {
  if (!(radius > 0.0)) throw std::invalid_argument("cutoff_ramp radius must be positive");
  if (!(order > 0.0)) throw std::invalid_argument("cutoff_ramp order must be positive");
  NoiseProfile p;
  p.family = ProfileFamily::cutoff_ramp;
  p.offset = p0;
  p.radius = radius;
  p.order = order;
  return p;
}

double NoiseProfile::operator()(double rho, double phi) const {
  switch (family) {
    case ProfileFamily::constant:
      return offset;
    case ProfileFamily::gauss_cos:
      return offset + (amplitude + modulation * std::cos(n * phi)) * std::exp(-decay * rho * rho);
    case ProfileFamily::cutoff_ramp:
      return 1.0 - (1.0 - offset) * std::exp(-std::pow(rho / radius, order));
  }
  throw std::logic_error("unhandled profile family");
}

ScalarField NoiseProfile::evaluate(const Grid& grid) const {
  return ScalarField::generate(
      grid, [this](double x, double y) { return (*this)(std::hypot(x, y), std::atan2(y, x)); });
}

std::string NoiseProfile::describe() const {
  std::ostringstream s;
  s << to_string(family) << "(offset=" << offset;
  if (family == ProfileFamily::gauss_cos) {
    s << " amplitude=" << amplitude << " modulation=" << modulation << " n=" << n
      << " decay=" << decay;
  } else if (family == ProfileFamily::cutoff_ramp) {
    s << " radius=" << radius << " order=" << order;
  }
  s << ")";
  return s.str();
}

const char* to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::constant: return "constant";
    case ProfileFamily::gauss_cos: return "gauss_cos";
    case ProfileFamily::cutoff_ramp: return "cutoff_ramp";
  }
  return "?";
}

ProfileFamily profile_family_from_string(const std::string& name) {
  if (name == "constant") return ProfileFamily::constant;
  if (name == "gauss_cos") return ProfileFamily::gauss_cos;
  if (name == "cutoff_ramp") return ProfileFamily::cutoff_ramp;
  throw std::invalid_argument("unknown profile family '" + name + "'");
}

}  // namespace qsky
