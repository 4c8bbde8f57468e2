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

#include "qsky/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qsky/field_io.hpp"

namespace qsky {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  explicit Stopwatch(bool deterministic) : off_(deterministic), start_(Clock::now()) {}
  double seconds() const {
    if (off_) return 0.0;
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  bool off_;
  Clock::time_point start_;
};

bool is_singular(ChannelFamily family, double p) {
  const auto pts = singular_points(family);
  return std::any_of(pts.begin(), pts.end(), [p](double s) { return std::abs(p - s) < 1e-12; });
}

double ring_radius(const ExperimentConfig& config, const Grid& grid) {
  return config.run.ring_radius.value_or(grid.extent - 0.2);
}

ResultRow base_row(const char* experiment, const std::string& channel, const StateSpec& s) {
  ResultRow r;
  r.experiment = experiment;
  r.channel = channel;
  r.l1 = s.l1;
  r.l2 = s.l2;
  return r;
}

ChannelFamily family_of(oracle::Family f) {
  switch (f) {
    case oracle::Family::bit_flip: return ChannelFamily::bit_flip;
    case oracle::Family::amp_damp: return ChannelFamily::amplitude_damping;
    case oracle::Family::phase_damp: return ChannelFamily::phase_damping;
  }
  throw std::logic_error("unhandled oracle family");
}

std::vector<ScalarField> dump_components(const LocalDensityField& rho, const ScalarField& density) {
  const StokesField s = stokes_from_density(rho);
  return {s.s0, s.sx, s.sy, s.sz, density};
}

}  // namespace

SkyrmionResult clean_skyrmion_number(const StateSpec& state, const Grid& grid,
                                     const TopologyOptions& options) {
  return skyrmion_number(normalize_trace(build_state(state, grid)), options);
}

SkyrmionResult noisy_skyrmion_number(const StateSpec& state, const KrausChannel& channel,
                                     const TopologyOptions& topology, const ApplyOptions& apply) {
  const auto rho = apply_channel(normalize_trace(build_state(state, channel.grid())), channel, apply);
  return skyrmion_number(rho, topology);
}

std::vector<double> singular_points(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::bit_flip:
    case ChannelFamily::phase_flip: return {0.5};
    case ChannelFamily::depolarizing:
    case ChannelFamily::phase_damping: return {1.0};
    case ChannelFamily::amplitude_damping: return {0.5, 1.0};
    default: return {};
  }
}

KrausChannel compactification_channel(const Grid& grid, const CutoffSpec& cutoff) {
  return channel_depolarizing(grid, NoiseProfile::cutoff_ramp(cutoff.p0, cutoff.radius, cutoff.order));
}

ExperimentResult run_topology_table(const ExperimentConfig& config) {
  const Grid grid = config.grid.make();
  const KrausChannel ch = build_channel(config, config.run.channel, grid);
  const auto topo = config.topology_options();
  ExperimentResult out;
  for (int target : config.run.topologies) {
    const Stopwatch sw(config.run.deterministic);
    const StateSpec s = config.state_for(target);
    ResultRow r = base_row("table", ch.name(), s);
    r.n_initial = clean_skyrmion_number(s, grid, topo).N;
    const auto fin = noisy_skyrmion_number(s, ch, topo, config.apply_options());
    r.n_final = fin.N;
    r.valid_fraction = fin.valid_fraction;
    r.wall_time = sw.seconds();
    out.rows.push_back(std::move(r));
  }
  return out;
}

ExperimentResult run_p_sweep(const ExperimentConfig& config) {
  const Grid grid = config.grid.make();
  const ChannelSpec& spec = config.channel(config.run.channel);
  const auto topo = config.topology_options();
  const StateSpec s = config.state;
  ExperimentResult out;
  for (double p : config.run.sweep_values) {
    const Stopwatch sw(config.run.deterministic);
    const KrausChannel ch = channel_from_probability(spec.family, grid, NoiseProfile::constant(p));
    ResultRow r = base_row("sweep", spec.name, s);
    r.sweep_value = p;
    r.n_initial = clean_skyrmion_number(s, grid, topo).N;
    const auto fin = noisy_skyrmion_number(s, ch, topo, config.apply_options());
    r.n_final = fin.N;
    r.valid_fraction = fin.valid_fraction;
    r.singular = is_singular(spec.family, p);
    r.wall_time = sw.seconds();
    out.rows.push_back(std::move(r));
  }
  return out;
}

ExperimentResult run_homotopy_trace(const ExperimentConfig& config) {
  const Grid grid = config.grid.make();
  const ChannelSpec& spec = config.channel(config.run.channel);
  const auto topo = config.topology_options();
  ExperimentResult out;
  for (int target : config.run.topologies) {
    const StateSpec s = config.state_for(target);
    for (double t : config.run.t_samples) {
      const Stopwatch sw(config.run.deterministic);
      const KrausChannel ch = spec.family == ChannelFamily::retarder
                                  ? homotopy_channel(grid, retarder_profiles(spec), t)
                                  : homotopy_channel(grid, diattenuator_profiles(spec), t);
      ResultRow r = base_row("homotopy", spec.name, s);
      r.sweep_value = t;
      r.n_initial = clean_skyrmion_number(s, grid, topo).N;
      const auto fin = noisy_skyrmion_number(s, ch, topo, config.apply_options());
      r.n_final = fin.N;
      r.valid_fraction = fin.valid_fraction;
      r.wall_time = sw.seconds();
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

ExperimentResult run_compactification_break(const ExperimentConfig& config) {
  const Grid grid = config.grid.make();
  const KrausChannel ch = compactification_channel(grid, config.run.cutoff);
  const auto topo = config.topology_options();
  // Outside the cutoff the state is fully mixed and has no direction, so the
  // default ring sits on the cutoff circle (or the usual ring if that is
  // further in).
  const double ring = config.run.ring_radius.value_or(
      std::min(config.run.cutoff.radius, ring_radius(config, grid)));
  ExperimentResult out;
  for (int target : config.run.topologies) {
    const Stopwatch sw(config.run.deterministic);
    const StateSpec s = config.state_for(target);
    ResultRow r = base_row("compactify", "cutoff_depolarizing", s);
    r.sweep_value = config.run.cutoff.radius;
    r.n_initial = clean_skyrmion_number(s, grid, topo).N;
    const auto rho = apply_channel(normalize_trace(build_state(s, grid)), ch, config.apply_options());
    const auto u = normalize_stokes(stokes_from_density(rho), topo.stokes_floor);
    const auto fin = skyrmion_number(u, topo);
    r.n_final = fin.N;
    r.valid_fraction = fin.valid_fraction;
    r.boundary_phi = boundary_phi_dependence(u, ring);
    r.wall_time = sw.seconds();
    out.rows.push_back(std::move(r));
  }
  return out;
}

ExperimentResult run_simulate(const ExperimentConfig& config,
                              const std::optional<std::filesystem::path>& dump_dir) {
  const Grid grid = config.grid.make();
  const KrausChannel ch = build_channel(config, config.run.channel, grid);
  const auto topo = config.topology_options();
  const StateSpec s = config.state;
  const Stopwatch sw(config.run.deterministic);

  const auto rho0 = normalize_trace(build_state(s, grid));
  const auto ini = skyrmion_number(rho0, topo);
  const auto rho1 = apply_channel(rho0, ch, config.apply_options());
  const auto u1 = normalize_stokes(stokes_from_density(rho1), topo.stokes_floor);
  const auto fin = skyrmion_number(u1, topo);

  ResultRow r = base_row("simulate", ch.name(), s);
  r.n_initial = ini.N;
  r.n_final = fin.N;
  r.valid_fraction = fin.valid_fraction;
  r.boundary_phi = boundary_phi_dependence(u1, ring_radius(config, grid));
  r.wall_time = sw.seconds();

  if (dump_dir) {
    std::filesystem::create_directories(*dump_dir);
    write_skgf(*dump_dir / "initial.skgf", grid, dump_components(rho0, ini.density));
    write_skgf(*dump_dir / "final.skgf", grid, dump_components(rho1, fin.density));
  }
  ExperimentResult out;
  out.rows.push_back(std::move(r));
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::optional<std::filesystem::path>& dump_dir) {
  switch (config.run.experiment) {
    case ExperimentKind::simulate: return run_simulate(config, dump_dir);
    case ExperimentKind::topology_table: return run_topology_table(config);
    case ExperimentKind::p_sweep: return run_p_sweep(config);
    case ExperimentKind::homotopy: return run_homotopy_trace(config);
    case ExperimentKind::compactify: return run_compactification_break(config);
  }
  throw std::logic_error("unhandled experiment kind");
}

OracleResidual oracle_residual(oracle::Family family, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rho_dist(0.1, 3.5);
  std::uniform_real_distribution<double> phi_dist(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> p_dist(0.0, 1.0);

  const Grid grid = make_grid(16, 16, 1.0);
  const StateSpec state = oracle::reference_state();
  ApplyOptions raw;
  raw.renormalize = false;

  OracleResidual res;
  res.family = family;
  res.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const double rho = rho_dist(rng);
    const double phi = phi_dist(rng);
    const double p = p_dist(rng);
    const auto dens = LocalDensityField::constant(
        grid, local_density(state, rho * std::cos(phi), rho * std::sin(phi)));
    const auto ch = channel_from_probability(family_of(family), grid, NoiseProfile::constant(p));
    const StokesField s = stokes_from_density(apply_channel(dens, ch, raw));
    const Eigen::Vector3d closed = oracle::analytic_stokes(family, p, rho, phi);
    const double err = (s.vector_at(0) - closed).norm() / closed.norm();
    if (err > res.max_relative_error) {
      res.max_relative_error = err;
      res.worst_rho = rho;
      res.worst_phi = phi;
      res.worst_p = p;
    }
  }
  return res;
}

}  // namespace qsky
