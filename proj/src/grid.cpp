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

#include "qsky/grid.hpp"

#include <sstream>

namespace qsky {

Grid make_grid(std::size_t nx, std::size_t ny, double extent) {
  if (nx < kMinGridPixels || ny < kMinGridPixels) {
    std::ostringstream msg;
    msg << "grid needs at least " << kMinGridPixels << " pixels per side, got " << nx << "x" << ny;
    throw std::invalid_argument(msg.str());
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw std::invalid_argument("grid extent must be positive and finite");
  }
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.extent = extent;
  g.dx = 2.0 * extent / static_cast<double>(nx - 1);
  g.dy = 2.0 * extent / static_cast<double>(ny - 1);
  return g;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) {
    std::ostringstream msg;
    msg << what << ": grid mismatch (" << a.nx << "x" << a.ny << " @" << a.extent << " vs " << b.nx
        << "x" << b.ny << " @" << b.extent << ")";
    throw std::invalid_argument(msg.str());
  }
}

namespace {

std::vector<double> axis_weights(std::size_t n, double h, IntegrationRule rule) {
  std::vector<double> w(n, h);
  if (rule == IntegrationRule::riemann) {
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
  }
  if (n % 2 == 0) {
    throw std::invalid_argument("Simpson integration needs an odd number of samples per axis");
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double c = (k == 0 || k == n - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    w[k] = c * h / 3.0;
  }
  return w;
}

}  // namespace

double integrate(const ScalarField& field, IntegrationRule rule, Reduction reduction) {
  const Grid& g = field.grid();
  for (std::size_t k = 0; k < field.size(); ++k) {
    if (!std::isfinite(field[k])) {
      std::ostringstream msg;
      msg << "non-finite value " << field[k] << " at pixel (" << g.column(k) << ", " << g.row(k)
          << ")";
      throw std::domain_error(msg.str());
    }
  }
  const auto wx = axis_weights(g.nx, g.dx, rule);
  const auto wy = axis_weights(g.ny, g.dy, rule);
  const auto ny = static_cast<std::int64_t>(g.ny);

  auto row_sum = [&](std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i) s += wx[i] * field(i, j);
    return s * wy[j];
  };

  if (reduction == Reduction::unordered) {
    double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::int64_t j = 0; j < ny; ++j) total += row_sum(static_cast<std::size_t>(j));
    return total;
  }

  std::vector<double> rows(g.ny);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < ny; ++j) {
    rows[static_cast<std::size_t>(j)] = row_sum(static_cast<std::size_t>(j));
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

}  // namespace qsky
