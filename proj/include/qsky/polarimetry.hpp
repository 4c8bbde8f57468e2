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

// Jones and Mueller calculus.
//
// Two Stokes labelings coexist in this library:
//   * Mueller matrices and Stokes4 use the optics order (S0, S1, S2, S3),
//     where S1 is the H/V component.
//   * Density-matrix code uses the Pauli order (S0, Sx, Sy, Sz) with
//     S_k = Tr(rho sigma_k), so Sz is the H/V component.
// The permutation matrix A below maps one to the other:
//   pauli = A * stokes,   stokes = A^T * pauli,
// i.e. (Sx, Sy, Sz) = (S2, S3, S1). pauli_frame_from_stokes and
// stokes_from_pauli_frame are the only crossings between the two.

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace qsky {

template <typename Scalar>
using Jones = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Mueller = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Stokes4 = Eigen::Matrix<Scalar, 4, 1>;

using JonesMatrix = Jones<double>;
using MuellerMatrix = Mueller<double>;

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
template <typename Scalar = double>
Jones<Scalar> pauli(int k) {
  using C = std::complex<Scalar>;
  Jones<Scalar> s;
  switch (k) {
    case 0: s << C(1), C(0), C(0), C(1); break;
    case 1: s << C(0), C(1), C(1), C(0); break;
    case 2: s << C(0), C(0, -1), C(0, 1), C(0); break;
    case 3: s << C(1), C(0), C(0), C(-1); break;
    default: throw std::out_of_range("pauli index must be 0..3");
  }
  return s;
}

template <typename Scalar = double>
Mueller<Scalar> stokes_pauli_map() {
  Mueller<Scalar> a = Mueller<Scalar>::Zero();
  a(0, 0) = 1;
  a(1, 2) = 1;
  a(2, 3) = 1;
  a(3, 1) = 1;
  return a;
}

template <typename Derived>
Stokes4<typename Derived::Scalar> pauli_frame_from_stokes(const Eigen::MatrixBase<Derived>& stokes) {
  using Scalar = typename Derived::Scalar;
  return stokes_pauli_map<Scalar>() * stokes;
}

template <typename Derived>
Stokes4<typename Derived::Scalar> stokes_from_pauli_frame(const Eigen::MatrixBase<Derived>& pauli_vec) {
  using Scalar = typename Derived::Scalar;
  return stokes_pauli_map<Scalar>().transpose() * pauli_vec;
}

/// General retarder, an SU(2) element parameterized by Euler-type angles.
template <typename Scalar>
Jones<Scalar> jones_retarder(Scalar theta, Scalar varphi, Scalar psi) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(theta / 2);
  const Scalar s = sin(theta / 2);
  const Scalar sum = (varphi + psi) / 2;
  const Scalar dif = (varphi - psi) / 2;
  Jones<Scalar> j;
  j << std::polar(c, -sum), std::polar(s, -dif), -std::polar(s, dif), std::polar(c, sum);
  return j;
}

/// Hermitian diattenuator with eigen-transmittances q and r along an axis
/// set by (theta, psi). Throws std::invalid_argument unless 0 < q, r <= 1.
template <typename Scalar>
Jones<Scalar> jones_diattenuator(Scalar theta, Scalar psi, Scalar q, Scalar r) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  if (!(q > Scalar(0) && q <= Scalar(1) && r > Scalar(0) && r <= Scalar(1))) {
    std::ostringstream msg;
    msg << "diattenuator transmittances must lie in (0, 1], got q=" << q << " r=" << r;
    throw std::invalid_argument(msg.str());
  }
  const Scalar sp = sqrt(q) + sqrt(r);
  const Scalar sm = sqrt(q) - sqrt(r);
  const Scalar off = sm * sin(theta) / 2;
  Jones<Scalar> j;
  j << (sp + sm * cos(theta)) / 2, std::polar(off, psi), std::polar(off, -psi),
      (sp - sm * cos(theta)) / 2;
  return j;
}

/// M = 1/2 A^T T A with T(nu, a) = Tr(sigma_nu J sigma_a J^dagger).
/// Throws std::logic_error if T carries an imaginary part above 1e-12 times
/// its scale, which can only come from a bug upstream.
template <typename Scalar>
Mueller<Scalar> mueller_from_jones(const Jones<Scalar>& j) {
  using std::abs;
  Eigen::Matrix<std::complex<Scalar>, 4, 4> t;
  const Jones<Scalar> jd = j.adjoint();
  for (int nu = 0; nu < 4; ++nu) {
    for (int a = 0; a < 4; ++a) t(nu, a) = (pauli<Scalar>(nu) * j * pauli<Scalar>(a) * jd).trace();
  }
  const Scalar scale = std::max(Scalar(1), t.cwiseAbs().maxCoeff());
  const Scalar residue = t.imag().cwiseAbs().maxCoeff();
  if (residue > Scalar(1e-12) * scale) {
    std::ostringstream msg;
    msg << "mueller_from_jones: imaginary residue " << residue;
    throw std::logic_error(msg.str());
  }
  const Mueller<Scalar> a = stokes_pauli_map<Scalar>();
  return Scalar(0.5) * a.transpose() * t.real() * a;
}

/// [[1, 0], [0, m]] for symmetric m with spectrum in [-1, 1].
template <typename Scalar>
Mueller<Scalar> mueller_depolarizer(const Eigen::Matrix<Scalar, 3, 3>& m) {
  using std::abs;
  const Scalar asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(1e-12)) throw std::invalid_argument("depolarizer block must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 3, 3>> es(m, Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues();
  if (ev.minCoeff() < Scalar(-1) - Scalar(1e-12) || ev.maxCoeff() > Scalar(1) + Scalar(1e-12)) {
    std::ostringstream msg;
    msg << "depolarizer eigenvalues must lie in [-1, 1], got [" << ev.minCoeff() << ", "
        << ev.maxCoeff() << "]";
    throw std::invalid_argument(msg.str());
  }
  Mueller<Scalar> out = Mueller<Scalar>::Identity();
  out.template bottomRightCorner<3, 3>() = m;
  return out;
}

template <typename DerivedM, typename DerivedS>
auto apply_mueller(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedS>& s) {
  return (m * s).eval();
}

/// Mueller matrix of the operator sum sum_i w_i K_i rho K_i^dagger, built
/// as the weighted sum of each Kraus operator's Jones-derived Mueller matrix.
template <typename Scalar, typename Range>
Mueller<Scalar> mueller_from_kraus(const Range& weighted_ops) {
  Mueller<Scalar> m = Mueller<Scalar>::Zero();
  for (const auto& [w, k] : weighted_ops) m += Scalar(w) * mueller_from_jones<Scalar>(k);
  return m;
}

}  // namespace qsky
