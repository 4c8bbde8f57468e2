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

#include "qsky/channels.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qsky/polarimetry.hpp"

namespace qsky {

namespace {

using Mat = Eigen::Matrix2cd;

void check_range(const ScalarField& f, double lo, double hi, bool lo_open, const char* what) {
  const Grid& g = f.grid();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double v = f[k];
    const bool ok = std::isfinite(v) && (lo_open ? v > lo : v >= lo) && v <= hi;
    if (!ok) {
      std::ostringstream msg;
      msg << what << " = " << v << " outside " << (lo_open ? "(" : "[") << lo << ", " << hi
          << "] at pixel (" << g.column(k) << ", " << g.row(k) << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

template <typename F>
KrausOperatorField op_field(const ScalarField& p, F&& f) {
  return map_field(p, [&](double v) -> Mat { return f(v); });
}

KrausChannel two_term(const Grid& grid, const NoiseProfile& profile, ChannelFamily family,
                      const char* name, Mat (*e0)(double), Mat (*e1)(double)) {
  const ScalarField p = profile.evaluate(grid);
  check_range(p, 0.0, 1.0, false, "p");
  KrausGroup g;
  g.ops.push_back(op_field(p, e0));
  g.ops.push_back(op_field(p, e1));
  return KrausChannel(name, family, {std::move(g)}, true);
}

KrausChannel retarder_from_fields(const ScalarField& theta, const ScalarField& varphi,
                                  const ScalarField& psi, std::string name) {
  require_same_grid(theta.grid(), varphi.grid(), "retarder");
  require_same_grid(theta.grid(), psi.grid(), "retarder");
  const Grid& grid = theta.grid();
  std::vector<Mat> ops(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) ops[k] = jones_retarder(theta[k], varphi[k], psi[k]);
  KrausGroup g;
  g.ops.emplace_back(grid, std::move(ops));
  return KrausChannel(std::move(name), ChannelFamily::retarder, {std::move(g)}, true);
}

KrausChannel diattenuator_from_fields(const ScalarField& theta, const ScalarField& psi,
                                      const ScalarField& q, const ScalarField& r,
                                      std::string name) {
  require_same_grid(theta.grid(), psi.grid(), "diattenuator");
  require_same_grid(theta.grid(), q.grid(), "diattenuator");
  require_same_grid(theta.grid(), r.grid(), "diattenuator");
  check_range(q, 0.0, 1.0, true, "q");
  check_range(r, 0.0, 1.0, true, "r");
  const Grid& grid = theta.grid();
  std::vector<Mat> ops(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ops[k] = jones_diattenuator(theta[k], psi[k], q[k], r[k]);
  }
  KrausGroup g;
  g.ops.emplace_back(grid, std::move(ops));
  return KrausChannel(std::move(name), ChannelFamily::diattenuator, {std::move(g)}, false);
}

ScalarField scale_field(const ScalarField& f, double t) {
  return map_field(f, [t](double v) { return t * v; });
}

ScalarField blend_from_one(const ScalarField& f, double t) {
  return map_field(f, [t](double v) { return (1.0 - t) + t * v; });
}

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("homotopy parameter t must lie in [0, 1], got " + std::to_string(t));
  }
}

}  // namespace

const char* to_string(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::identity: return "identity";
    case ChannelFamily::retarder: return "retarder";
    case ChannelFamily::diattenuator: return "diattenuator";
    case ChannelFamily::bit_flip: return "bit_flip";
    case ChannelFamily::phase_flip: return "phase_flip";
    case ChannelFamily::depolarizing: return "depolarizing";
    case ChannelFamily::amplitude_damping: return "amplitude_damping";
    case ChannelFamily::phase_damping: return "phase_damping";
    case ChannelFamily::convex: return "convex";
  }
  return "?";
}

ChannelFamily channel_family_from_string(const std::string& name) {
  for (auto f : {ChannelFamily::identity, ChannelFamily::retarder, ChannelFamily::diattenuator,
                 ChannelFamily::bit_flip, ChannelFamily::phase_flip, ChannelFamily::depolarizing,
                 ChannelFamily::amplitude_damping, ChannelFamily::phase_damping,
                 ChannelFamily::convex}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown channel family '" + name + "'");
}

KrausChannel::KrausChannel(std::string name, ChannelFamily family, std::vector<KrausGroup> groups,
                           bool trace_preserving)
    : name_(std::move(name)),
      family_(family),
      groups_(std::move(groups)),
      trace_preserving_(trace_preserving) {
  if (groups_.empty() || groups_.front().ops.empty()) {
    throw std::invalid_argument("channel '" + name_ + "' has no Kraus operators");
  }
  grid_ = groups_.front().ops.front().grid();
  double total = 0.0;
  for (const auto& g : groups_) {
    if (g.ops.empty()) throw std::invalid_argument("channel '" + name_ + "' has an empty group");
    if (!(g.weight >= 0.0)) throw std::invalid_argument("channel weights must be non-negative");
    for (const auto& op : g.ops) require_same_grid(grid_, op.grid(), "KrausChannel");
    total += g.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "channel '" << name_ << "' weights sum to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
}

std::size_t KrausChannel::operator_count() const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.ops.size();
  return n;
}

Eigen::Matrix2cd KrausChannel::apply_at(std::size_t k, const Eigen::Matrix2cd& rho) const {
  Mat out = Mat::Zero();
  for (const auto& g : groups_) {
    Mat part = Mat::Zero();
    for (const auto& op : g.ops) part.noalias() += op[k] * rho * op[k].adjoint();
    out += g.weight * part;
  }
  return out;
}

Eigen::Matrix2cd KrausChannel::completeness_at(std::size_t k) const {
  Mat out = Mat::Zero();
  for (const auto& g : groups_) {
    Mat part = Mat::Zero();
    for (const auto& op : g.ops) part.noalias() += op[k].adjoint() * op[k];
    out += g.weight * part;
  }
  return out;
}

KrausChannel identity_channel(const Grid& grid) {
  KrausGroup g;
  g.ops.push_back(KrausOperatorField::constant(grid, Mat::Identity()));
  return KrausChannel("identity", ChannelFamily::identity, {std::move(g)}, true);
}

KrausChannel channel_retarder(const Grid& grid, const RetarderProfiles& profiles) {
  return retarder_from_fields(profiles.theta.evaluate(grid), profiles.varphi.evaluate(grid),
                              profiles.psi.evaluate(grid), "retarder");
}

KrausChannel channel_diattenuator(const Grid& grid, const DiattenuatorProfiles& profiles) {
  return diattenuator_from_fields(profiles.theta.evaluate(grid), profiles.psi.evaluate(grid),
                                  profiles.q.evaluate(grid), profiles.r.evaluate(grid),
                                  "diattenuator");
}

KrausChannel channel_bit_flip(const Grid& grid, const NoiseProfile& p) {
  return two_term(
      grid, p, ChannelFamily::bit_flip, "bit_flip",
      [](double v) -> Mat { return std::sqrt(v) * pauli(0); },
      [](double v) -> Mat { return std::sqrt(1.0 - v) * pauli(1); });
}

KrausChannel channel_phase_flip(const Grid& grid, const NoiseProfile& p) {
  return two_term(
      grid, p, ChannelFamily::phase_flip, "phase_flip",
      [](double v) -> Mat { return std::sqrt(v) * pauli(0); },
      [](double v) -> Mat { return std::sqrt(1.0 - v) * pauli(3); });
}

KrausChannel channel_amplitude_damping(const Grid& grid, const NoiseProfile& p) {
  return two_term(
      grid, p, ChannelFamily::amplitude_damping, "amplitude_damping",
      [](double v) -> Mat {
        Mat e = Mat::Zero();
        e(0, 0) = 1.0;
        e(1, 1) = std::sqrt(1.0 - v);
        return e;
      },
      [](double v) -> Mat {
        Mat e = Mat::Zero();
        e(0, 1) = std::sqrt(v);
        return e;
      });
}

KrausChannel channel_phase_damping(const Grid& grid, const NoiseProfile& p) {
  return two_term(
      grid, p, ChannelFamily::phase_damping, "phase_damping",
      [](double v) -> Mat {
        Mat e = Mat::Zero();
        e(0, 0) = 1.0;
        e(1, 1) = std::sqrt(1.0 - v);
        return e;
      },
      [](double v) -> Mat {
        Mat e = Mat::Zero();
        e(1, 1) = std::sqrt(v);
        return e;
      });
}

KrausChannel channel_depolarizing(const Grid& grid, const NoiseProfile& profile) {
  const ScalarField p = profile.evaluate(grid);
  check_range(p, 0.0, 1.0, false, "p");
  KrausGroup g;
  g.ops.push_back(op_field(p, [](double v) -> Mat { return std::sqrt(1.0 - 0.75 * v) * pauli(0); }));
  for (int s = 1; s <= 3; ++s) {
    g.ops.push_back(op_field(p, [s](double v) -> Mat { return std::sqrt(0.25 * v) * pauli(s); }));
  }
  return KrausChannel("depolarizing", ChannelFamily::depolarizing, {std::move(g)}, true);
}

KrausChannel channel_from_probability(ChannelFamily family, const Grid& grid, const NoiseProfile& p) {
  switch (family) {
    case ChannelFamily::bit_flip: return channel_bit_flip(grid, p);
    case ChannelFamily::phase_flip: return channel_phase_flip(grid, p);
    case ChannelFamily::depolarizing: return channel_depolarizing(grid, p);
    case ChannelFamily::amplitude_damping: return channel_amplitude_damping(grid, p);
    case ChannelFamily::phase_damping: return channel_phase_damping(grid, p);
    default: break;
  }
  throw std::invalid_argument(std::string("'") + to_string(family) +
                              "' is not a probability-driven channel");
}

KrausChannel convex_combine(const std::vector<KrausChannel>& channels,
                            const std::vector<double>& weights, std::string name) {
  if (channels.empty() || channels.size() != weights.size()) {
    throw std::invalid_argument("convex_combine needs one weight per channel");
  }
  if (weights.size() > 4) {
    std::clog << "warning: convex_combine with " << weights.size()
              << " weights; four always suffice for a qubit channel\n";
  }
  std::vector<KrausGroup> groups;
  bool tp = true;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (weights[c] < 0.0) throw std::invalid_argument("convex weights must be non-negative");
    tp = tp && channels[c].trace_preserving();
    for (const auto& g : channels[c].groups()) {
      groups.push_back(KrausGroup{weights[c] * g.weight, g.ops});
    }
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "convex weights sum to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
  if (channels.size() == 1) {
    return KrausChannel(std::move(name), channels.front().family(), std::move(groups), tp);
  }
  return KrausChannel(std::move(name), ChannelFamily::convex, std::move(groups), tp);
}

LocalDensityField apply_channel(const LocalDensityField& rho, const KrausChannel& ch,
                                const ApplyOptions& options) {
  require_same_grid(rho.grid(), ch.grid(), "apply_channel");
  const Grid& grid = rho.grid();
  const auto n = static_cast<std::int64_t>(grid.size());
  std::vector<Mat> out(grid.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t kk = 0; kk < n; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const Mat m = ch.apply_at(k, rho[k]);
    out[k] = 0.5 * (m + m.adjoint());
  }
  LocalDensityField raw(grid, std::move(out));
  if (!options.renormalize) return raw;
  return normalize_trace(raw, options.trace_floor);
}

LocalDensityField normalize_trace(const LocalDensityField& rho, double trace_floor) {
  double max_trace = 0.0;
  for (const auto& m : rho.values()) max_trace = std::max(max_trace, m.trace().real());
  const double floor = trace_floor * max_trace;
  return map_field(rho, [floor](const Mat& m) -> Mat {
    const double tr = m.trace().real();
    if (!(tr > floor) || !(tr > 0.0)) return Mat::Zero();
    return m / tr;
  });
}

const char* to_string(CptpClass c) {
  switch (c) {
    case CptpClass::trace_preserving: return "trace-preserving";
    case CptpClass::trace_decreasing: return "trace-decreasing";
    case CptpClass::invalid: return "invalid";
  }
  return "?";
}

CptpReport verify_cptp(const KrausChannel& ch, double tol) {
  CptpReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  report.max_eigenvalue = -std::numeric_limits<double>::infinity();
  bool all_identity = true;
  for (std::size_t k = 0; k < ch.grid().size(); ++k) {
    const Mat c = ch.completeness_at(k);
    Eigen::SelfAdjointEigenSolver<Mat> es(c, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(1);
    const double dev = std::max(std::abs(lo - 1.0), std::abs(hi - 1.0));
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_pixel = k;
    }
    report.min_eigenvalue = std::min(report.min_eigenvalue, lo);
    report.max_eigenvalue = std::max(report.max_eigenvalue, hi);
    if (dev > tol) all_identity = false;
  }
  if (all_identity) {
    report.classification = CptpClass::trace_preserving;
  } else if (report.max_eigenvalue <= 1.0 + tol && report.min_eigenvalue >= -tol) {
    report.classification = CptpClass::trace_decreasing;
  } else {
    report.classification = CptpClass::invalid;
  }
  return report;
}

KrausChannel homotopy_channel(const Grid& grid, const RetarderProfiles& profiles, double t) {
  check_t(t);
  return retarder_from_fields(scale_field(profiles.theta.evaluate(grid), t),
                              scale_field(profiles.varphi.evaluate(grid), t),
                              scale_field(profiles.psi.evaluate(grid), t), "retarder_homotopy");
}

KrausChannel homotopy_channel(const Grid& grid, const DiattenuatorProfiles& profiles, double t) {
  check_t(t);
  return diattenuator_from_fields(scale_field(profiles.theta.evaluate(grid), t),
                                  scale_field(profiles.psi.evaluate(grid), t),
                                  blend_from_one(profiles.q.evaluate(grid), t),
                                  blend_from_one(profiles.r.evaluate(grid), t),
                                  "diattenuator_homotopy");
}

}  // namespace qsky
