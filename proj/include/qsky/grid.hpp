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
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace qsky {

/// Uniform, origin-centred sampling of the transverse plane.
///
/// All lengths are in units of the Gaussian width w0. Pixel (i, j) sits at
///   x = -extent + i * dx,   y = -extent + j * dy,
/// so the first and last samples land exactly on the window edges. Data is
/// stored row-major with j (the y index) as the slow index:
///   index(i, j) = j * nx + i.
/// This is the only place that convention is spelled out; everything else
/// goes through the accessors below.
struct Grid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double extent = 0.0;
  double dx = 0.0;
  double dy = 0.0;

  double x(std::size_t i) const { return -extent + static_cast<double>(i) * dx; }
  double y(std::size_t j) const { return -extent + static_cast<double>(j) * dy; }
  double rho(std::size_t i, std::size_t j) const { return std::hypot(x(i), y(j)); }
  /// atan2 convention, in (-pi, pi].
  double phi(std::size_t i, std::size_t j) const { return std::atan2(y(j), x(i)); }

  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  std::size_t column(std::size_t k) const { return k % nx; }
  std::size_t row(std::size_t k) const { return k / nx; }
  std::size_t size() const { return nx * ny; }
  double pixel_area() const { return dx * dy; }

  bool operator==(const Grid& other) const {
    return nx == other.nx && ny == other.ny && extent == other.extent;
  }
};

inline constexpr std::size_t kMinGridPixels = 16;

/// Throws std::invalid_argument for nx, ny < 16 or non-positive extent.
Grid make_grid(std::size_t nx, std::size_t ny, double extent);

/// Throws std::invalid_argument when the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

/// One value per pixel over a Grid. Immutable once built.
template <typename T>
class Field {
 public:
  using value_type = T;

  Field() = default;
  Field(Grid grid, std::vector<T> data) : grid_(grid), data_(std::move(data)) {
    if (data_.size() != grid_.size()) {
      throw std::invalid_argument("field data length " + std::to_string(data_.size()) +
                                  " does not match grid size " + std::to_string(grid_.size()));
    }
  }

  /// Builds a field from f(x, y). Evaluated in parallel; f must be pure.
  template <typename F>
  static Field generate(const Grid& grid, F&& f) {
    std::vector<T> data(grid.size());
    const auto ny = static_cast<std::int64_t>(grid.ny);
#pragma omp parallel for schedule(static)
    for (std::int64_t jj = 0; jj < ny; ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      const double y = grid.y(j);
      for (std::size_t i = 0; i < grid.nx; ++i) {
        data[grid.index(i, j)] = f(grid.x(i), y);
      }
    }
    return Field(grid, std::move(data));
  }

  static Field constant(const Grid& grid, const T& value) {
    return Field(grid, std::vector<T>(grid.size(), value));
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }
  const T& operator[](std::size_t k) const { return data_[k]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[grid_.index(i, j)]; }
  std::span<const T> values() const { return data_; }

 private:
  Grid grid_;
  std::vector<T> data_;
};

using ScalarField = Field<double>;
using ComplexField = Field<std::complex<double>>;
using ComplexMatrixField = Field<Eigen::Matrix2cd>;
using MaskField = Field<std::uint8_t>;

/// Pointwise transform. `f` is called either as f(value) or f(value, x, y).
/// Evaluation order is unspecified and may be parallel.
template <typename T, typename F>
auto map_field(const Field<T>& field, F&& f) {
  constexpr bool kWithCoords = std::is_invocable_v<F&, const T&, double, double>;
  using Picked = std::conditional_t<kWithCoords, std::invoke_result<F&, const T&, double, double>,
                                    std::invoke_result<F&, const T&>>;
  using R = std::decay_t<typename Picked::type>;
  const Grid& grid = field.grid();
  std::vector<R> out(grid.size());
  const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t kk = 0; kk < n; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    if constexpr (kWithCoords) {
      out[k] = f(field[k], grid.x(grid.column(k)), grid.y(grid.row(k)));
    } else {
      out[k] = f(field[k]);
    }
  }
  return Field<R>(grid, std::move(out));
}

/// Pixel-cell Riemann sum. Each sample owns the cell of size dx*dy centred
/// on it, clipped to the window, so edge samples carry half weight and
/// corners a quarter; a constant integrates exactly to its value times the
/// window area. Simpson is offered for convergence studies and needs odd
/// nx and ny.
enum class IntegrationRule { riemann, simpson };

/// `ordered` sums row partials in row order and is bit-reproducible
/// regardless of thread count. `unordered` lets OpenMP combine partials.
enum class Reduction { ordered, unordered };

/// Throws std::domain_error naming the first non-finite pixel.
double integrate(const ScalarField& field, IntegrationRule rule = IntegrationRule::riemann,
                 Reduction reduction = Reduction::ordered);

}  // namespace qsky
