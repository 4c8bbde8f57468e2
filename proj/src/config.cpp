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

#include "qsky/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace qsky {

namespace {

const std::vector<std::string>& required_params(ChannelFamily family) {
  static const std::vector<std::string> none;
  static const std::vector<std::string> prob = {"p"};
  static const std::vector<std::string> ret = {"theta", "varphi", "psi"};
  static const std::vector<std::string> dia = {"theta", "psi", "q", "r"};
  switch (family) {
    case ChannelFamily::retarder: return ret;
    case ChannelFamily::diattenuator: return dia;
    case ChannelFamily::bit_flip:
    case ChannelFamily::phase_flip:
    case ChannelFamily::depolarizing:
    case ChannelFamily::amplitude_damping:
    case ChannelFamily::phase_damping: return prob;
    default: return none;
  }
}

std::string where(const YAML::Node& node) {
  const auto m = node.Mark();
  if (m.is_null()) return "";
  return " (line " + std::to_string(m.line + 1) + ")";
}

template <typename T>
T get_or(const YAML::Node& node, const char* key, T fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type" +
                                where(v));
  }
}

NoiseProfile parse_profile(const YAML::Node& node, const std::string& what) {
  if (node.IsScalar()) return NoiseProfile::constant(node.as<double>());
  if (!node.IsMap()) throw std::invalid_argument("profile '" + what + "' must be a number or map" + where(node));
  const auto family = profile_family_from_string(get_or<std::string>(node, "profile", "constant"));
  switch (family) {
    case ProfileFamily::constant:
      return NoiseProfile::constant(get_or<double>(node, "value", 0.0));
    case ProfileFamily::gauss_cos:
      return NoiseProfile::gauss_cos(get_or<double>(node, "amplitude", 0.0),
                                     get_or<double>(node, "modulation", 0.0),
                                     get_or<int>(node, "n", 0), get_or<double>(node, "decay", 1.0),
                                     get_or<double>(node, "offset", 0.0));
    case ProfileFamily::cutoff_ramp:
      return NoiseProfile::cutoff_ramp(get_or<double>(node, "p0", 0.1),
                                       get_or<double>(node, "radius", 1.2),
                                       get_or<double>(node, "order", 8.0));
  }
  throw std::logic_error("unhandled profile family");
}

ChannelSpec parse_channel(const YAML::Node& node) {
  ChannelSpec c;
  c.name = get_or<std::string>(node, "name", "");
  if (c.name.empty()) throw std::invalid_argument("channel block without a name" + where(node));
  c.family = channel_family_from_string(get_or<std::string>(node, "family", ""));
  if (c.family == ChannelFamily::convex) {
    const YAML::Node comps = node["components"];
    if (!comps || !comps.IsSequence()) {
      throw std::invalid_argument("convex channel '" + c.name + "' needs a components list");
    }
    for (const auto& item : comps) {
      c.components.emplace_back(get_or<std::string>(item, "channel", ""),
                                get_or<double>(item, "weight", -1.0));
    }
    return c;
  }
  for (const auto& key : required_params(c.family)) {
    const YAML::Node v = node[key];
    if (v) c.params.emplace(key, parse_profile(v, c.name + "." + key));
  }
  return c;
}

std::vector<double> parse_values(const YAML::Node& node) {
  std::vector<double> out;
  if (!node) return out;
  if (node.IsSequence()) return node.as<std::vector<double>>();
  if (node.IsMap() && node["values"]) return node["values"].as<std::vector<double>>();
  if (node.IsMap()) {
    const double start = get_or<double>(node, "start", 0.0);
    const double stop = get_or<double>(node, "stop", 1.0);
    const double step = get_or<double>(node, "step", 0.1);
    if (!(step > 0.0)) throw std::invalid_argument("sweep step must be positive");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  throw std::invalid_argument("sweep must be a list or {start, stop, step}" + where(node));
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::simulate: return "simulate";
    case ExperimentKind::topology_table: return "table";
    case ExperimentKind::p_sweep: return "sweep";
    case ExperimentKind::homotopy: return "homotopy";
    case ExperimentKind::compactify: return "compactify";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto k : {ExperimentKind::simulate, ExperimentKind::topology_table, ExperimentKind::p_sweep,
                 ExperimentKind::homotopy, ExperimentKind::compactify}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

const ChannelSpec& ExperimentConfig::channel(const std::string& name) const {
  for (const auto& c : channels) {
    if (c.name == name) return c;
  }
  throw std::invalid_argument("no channel named '" + name + "'");
}

StateSpec ExperimentConfig::state_for(int target) const {
  StateSpec s = state_for_winding(target, state.alpha);
  if (auto it = run.mapping.find(target); it != run.mapping.end()) {
    s.l1 = it->second.first;
    s.l2 = it->second.second;
  }
  return s;
}

TopologyOptions ExperimentConfig::topology_options() const {
  TopologyOptions o;
  o.stokes_floor = run.stokes_floor;
  o.scheme = run.scheme;
  o.reduction = run.deterministic ? Reduction::ordered : Reduction::unordered;
  return o;
}

ApplyOptions ExperimentConfig::apply_options() const {
  ApplyOptions o;
  o.trace_floor = run.trace_floor;
  return o;
}

void ExperimentConfig::validate() const {
  state.validate();
  std::set<std::string> seen;
  for (const auto& c : channels) {
    if (!seen.insert(c.name).second) {
      throw std::invalid_argument("duplicate channel name '" + c.name + "'");
    }
    for (const auto& key : required_params(c.family)) {
      if (!c.params.count(key)) {
        throw std::invalid_argument("channel '" + c.name + "' is missing parameter '" + key + "'");
      }
    }
    for (const auto& [ref, w] : c.components) {
      // Convex blocks may only reference blocks defined above them.
      if (!seen.count(ref) || ref == c.name) {
        throw std::invalid_argument("convex channel '" + c.name + "' references '" + ref +
                                    "', which is not defined before it");
      }
      if (w < 0.0) throw std::invalid_argument("convex weights must be non-negative");
    }
  }
  const bool needs_channel = run.experiment != ExperimentKind::compactify;
  if (needs_channel && !seen.count(run.channel)) {
    throw std::invalid_argument("run.channel '" + run.channel + "' is not defined");
  }
  if (run.experiment == ExperimentKind::p_sweep) {
    if (run.sweep_values.empty()) throw std::invalid_argument("sweep experiment needs run.sweep");
    const auto& c = channel(run.channel);
    if (required_params(c.family).size() != 1) {
      throw std::invalid_argument("sweep channel '" + c.name + "' is not probability-driven");
    }
    for (double v : run.sweep_values) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("sweep value " + std::to_string(v) + " outside [0, 1]");
      }
    }
  }
  if (run.experiment == ExperimentKind::homotopy) {
    const auto f = channel(run.channel).family;
    if (f != ChannelFamily::retarder && f != ChannelFamily::diattenuator) {
      throw std::invalid_argument("homotopy needs a retarder or diattenuator channel");
    }
    for (double t : run.t_samples) {
      if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t samples must lie in [0, 1]");
    }
  }
  if (run.experiment == ExperimentKind::topology_table || run.experiment == ExperimentKind::compactify) {
    if (run.topologies.empty()) throw std::invalid_argument("run.topologies is empty");
  }
  if (run.experiment == ExperimentKind::compactify && !(run.cutoff.radius > 0.0)) {
    throw std::invalid_argument("cutoff radius must be positive");
  }
  if (run.ring_radius && !(*run.ring_radius > 0.0 && *run.ring_radius <= grid.extent)) {
    throw std::invalid_argument("ring_radius must lie in (0, extent]");
  }
}

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("config is not valid YAML: ") + e.what());
  }
  ExperimentConfig cfg;
  if (const auto g = root["grid"]) {
    cfg.grid.nx = get_or<std::size_t>(g, "nx", kDefaultResolution);
    cfg.grid.ny = get_or<std::size_t>(g, "ny", cfg.grid.nx);
    cfg.grid.extent = get_or<double>(g, "extent", kDefaultExtent);
  }
  if (const auto s = root["state"]) {
    cfg.state.l1 = get_or<int>(s, "l1", 1);
    cfg.state.l2 = get_or<int>(s, "l2", 0);
    cfg.state.alpha = get_or<double>(s, "alpha", 0.0);
  }
  if (const auto cs = root["channels"]) {
    for (const auto& c : cs) cfg.channels.push_back(parse_channel(c));
  }
  if (const auto r = root["run"]) {
    RunSpec& run = cfg.run;
    run.experiment = experiment_kind_from_string(get_or<std::string>(r, "experiment", "simulate"));
    run.channel = get_or<std::string>(r, "channel", "");
    if (r["topologies"]) run.topologies = r["topologies"].as<std::vector<int>>();
    run.sweep_values = parse_values(r["sweep"]);
    if (r["t_samples"]) run.t_samples = parse_values(r["t_samples"]);
    run.output = get_or<std::string>(r, "output", run.output.string());
    run.deterministic = get_or<bool>(r, "deterministic", true);
    run.trace_floor = get_or<double>(r, "trace_floor", run.trace_floor);
    run.stokes_floor = get_or<double>(r, "stokes_floor", run.stokes_floor);
    run.scheme = density_scheme_from_string(get_or<std::string>(r, "scheme", "solid_angle"));
    if (const auto c = r["cutoff"]) {
      run.cutoff.radius = get_or<double>(c, "radius", run.cutoff.radius);
      run.cutoff.p0 = get_or<double>(c, "p0", run.cutoff.p0);
      run.cutoff.order = get_or<double>(c, "order", run.cutoff.order);
    }
    if (r["ring_radius"]) run.ring_radius = r["ring_radius"].as<double>();
    if (const auto m = r["mapping"]) {
      for (const auto& kv : m) {
        const auto pair = kv.second.as<std::vector<int>>();
        if (pair.size() != 2) throw std::invalid_argument("mapping entries must be [l1, l2]");
        run.mapping[kv.first.as<int>()] = {pair[0], pair[1]};
      }
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RetarderProfiles retarder_profiles(const ChannelSpec& spec) {
  if (spec.family != ChannelFamily::retarder) {
    throw std::invalid_argument("channel '" + spec.name + "' is not a retarder");
  }
  return {spec.params.at("theta"), spec.params.at("varphi"), spec.params.at("psi")};
}

DiattenuatorProfiles diattenuator_profiles(const ChannelSpec& spec) {
  if (spec.family != ChannelFamily::diattenuator) {
    throw std::invalid_argument("channel '" + spec.name + "' is not a diattenuator");
  }
  return {spec.params.at("theta"), spec.params.at("psi"), spec.params.at("q"), spec.params.at("r")};
}

KrausChannel build_channel(const ExperimentConfig& config, const std::string& name,
                           const Grid& grid) {
  const ChannelSpec& spec = config.channel(name);
  switch (spec.family) {
    case ChannelFamily::identity:
      return identity_channel(grid);
    case ChannelFamily::retarder:
      return channel_retarder(grid, retarder_profiles(spec));
    case ChannelFamily::diattenuator:
      return channel_diattenuator(grid, diattenuator_profiles(spec));
    case ChannelFamily::convex: {
      std::vector<KrausChannel> parts;
      std::vector<double> weights;
      for (const auto& [ref, w] : spec.components) {
        parts.push_back(build_channel(config, ref, grid));
        weights.push_back(w);
      }
      return convex_combine(parts, weights, spec.name);
    }
    default:
      return channel_from_probability(spec.family, grid, spec.params.at("p"));
  }
}

}  // namespace qsky
