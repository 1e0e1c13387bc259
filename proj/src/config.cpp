// Copyright 2026 The dissgate Authors
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

#include "dissgate/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dissgate/errors.hpp"

namespace dissgate {
namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

// Walks one JSON object, rejecting keys that no reader asked for.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "must be a JSON object");
  }

  ~ObjectReader() = default;

  const json* find(const std::string& key) {
    known_.insert(key);
    auto it = node_.find(key);
    if (it == node_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  void reject_unknown() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!known_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown key");
    }
  }

  template <typename T>
  void read(const std::string& key, T& target) {
    if (const json* v = find(key)) target = convert<T>(*v, path(key));
  }

  template <typename T>
  void read(const std::string& key, std::optional<T>& target) {
    if (const json* v = find(key)) target = convert<T>(*v, path(key));
  }

  template <typename T>
  static T convert(const json& v, const std::string& where) {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError(where, "must be a number");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigError(where, "must be an integer");
        if constexpr (std::is_unsigned_v<T>) {
          if (v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(where, "must be non-negative");
        }
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError(where, "must be a string");
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(where, e.what());
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> known_;
};

Complex parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(where, "must be a number or a [re, im] pair");
}

void parse_params(const json& node, SystemParams& params) {
  ObjectReader r(node, "params");
  r.read("g3", params.g3);
  r.read("gamma3", params.gamma3);
  if (const json* om = r.find("omega")) {
    const std::string where = r.path("omega");
    if (!om->is_array() || om->size() != 2) throw ConfigError(where, "must be [[O0_1, O1_1], [O0_2, O1_2]]");
    for (std::size_t ion = 0; ion < 2; ++ion) {
      const json& row = (*om)[ion];
      if (!row.is_array() || row.size() != 2) throw ConfigError(where, "each ion row must hold two entries");
      for (std::size_t j = 0; j < 2; ++j) {
        params.omega[ion][j] =
            parse_complex(row[j], where + "[" + std::to_string(ion) + "][" + std::to_string(j) + "]");
      }
    }
  }
  r.reject_unknown();
}

void parse_evolve(const json& node, EvolveSettings& s) {
  ObjectReader r(node, "evolve");
  r.read("initial_state", s.initial_state);
  r.read("drive", s.drive);
  r.read("components", s.components);
  if (const json* amps = r.find("amplitudes")) {
    if (!amps->is_array()) throw ConfigError(r.path("amplitudes"), "must be an array of amplitudes");
    std::vector<Complex> values;
    for (std::size_t k = 0; k < amps->size(); ++k) {
      values.push_back(parse_complex((*amps)[k], r.path("amplitudes") + "[" + std::to_string(k) + "]"));
    }
    s.amplitudes = std::move(values);
  }
  r.reject_unknown();
}

void parse_trajectory(const json& node, TrajectorySettings& s) {
  ObjectReader r(node, "trajectory");
  r.read("n_traj", s.n_traj);
  r.read("t_final", s.t_final);
  r.read("initial_state", s.initial_state);
  r.read("drive", s.drive);
  r.read("destination_level", s.destination_level);
  r.read("histogram_bins", s.histogram_bins);
  r.read("coarse_steps", s.coarse_steps);
  r.read("restart_runs", s.restart_runs);
  r.reject_unknown();
}

void parse_repeat(const json& node, RepeatSettings& s) {
  ObjectReader r(node, "repeat");
  r.read("p0", s.p0);
  r.read("n_gates", s.n_gates);
  r.read("m_runs", s.m_runs);
  r.read("target_success", s.target_success);
  r.reject_unknown();
}

void parse_dfs(const json& node, DfsOptions& s) {
  ObjectReader r(node, "dfs");
  r.read("tol_real", s.tol_real);
  r.read("tol_trunc", s.tol_trunc);
  r.read("pivot_tol", s.pivot_tol);
  r.read("truncation_filter", s.truncation_filter);
  r.reject_unknown();
}

void parse_verify(const json& node, VerifySettings& s) {
  ObjectReader r(node, "verify");
  r.read("t_max", s.t_max);
  r.read("samples", s.samples);
  r.reject_unknown();
}

template <typename T>
void require_ascending(const std::vector<T>& grid, const std::string& key, bool strictly_positive = true) {
  if (grid.empty()) throw ConfigError(key, "must be nonempty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (strictly_positive && !(grid[k] > T{0})) throw ConfigError(key, "values must be positive");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw ConfigError(key, "must be sorted ascending without duplicates");
  }
}

void require_positive(double v, const std::string& key) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be a finite positive rate");
}

void require_drive(const std::string& drive, const std::string& key) {
  if (drive != "cnot" && drive != "params") throw ConfigError(key, "must be \"cnot\" or \"params\"");
}

}  // namespace

void validate(const RunConfig& c) {
  c.params.validate();
  if (c.n_max < 1) throw ConfigError("n_max", "must be >= 1");
  require_positive(c.omega, "omega");
  require_positive(c.gamma_sweep_omega, "gamma_sweep_omega");
  require_ascending(c.omega_grid, "omega_grid");
  require_ascending(c.gamma_grid, "gamma_grid");
  if (c.omega_grid.back() > 0.5) throw ConfigError("omega_grid", "values must not exceed 0.5 g2");
  if (c.gamma_grid.back() > 50.0) throw ConfigError("gamma_grid", "values must not exceed 50 g2");
  if (c.initial_states.empty()) throw ConfigError("initial_states", "must be nonempty");
  if (!c.t_grid.empty()) {
    if (c.t_grid.front() < 0.0) throw ConfigError("t_grid", "times must be >= 0");
    require_ascending(c.t_grid, "t_grid", false);
  }
  require_drive(c.evolve.drive, "evolve.drive");
  require_drive(c.trajectory.drive, "trajectory.drive");
  if (c.trajectory.n_traj < 1) throw ConfigError("trajectory.n_traj", "must be >= 1");
  if (c.trajectory.t_final) require_positive(*c.trajectory.t_final, "trajectory.t_final");
  if (c.trajectory.destination_level < 0 || c.trajectory.destination_level > 2) {
    throw ConfigError("trajectory.destination_level", "must be one of 0, 1, 2");
  }
  if (c.trajectory.histogram_bins < 1) throw ConfigError("trajectory.histogram_bins", "must be >= 1");
  if (c.trajectory.coarse_steps < 1) throw ConfigError("trajectory.coarse_steps", "must be >= 1");
  require_ascending(c.repeat.p0, "repeat.p0");
  if (c.repeat.p0.back() > 1.0) throw ConfigError("repeat.p0", "values must lie in (0, 1]");
  require_ascending(c.repeat.n_gates, "repeat.n_gates");
  require_ascending(c.repeat.m_runs, "repeat.m_runs");
  if (!(c.repeat.target_success > 0.0 && c.repeat.target_success < 1.0)) {
    throw ConfigError("repeat.target_success", "must lie in (0, 1)");
  }
  if (c.dfs.tol_real) require_positive(*c.dfs.tol_real, "dfs.tol_real");
  require_positive(c.dfs.tol_trunc, "dfs.tol_trunc");
  require_positive(c.dfs.pivot_tol, "dfs.pivot_tol");
  require_positive(c.verify.t_max, "verify.t_max");
  if (c.verify.samples < 1) throw ConfigError("verify.samples", "must be >= 1");
  if (c.threads < 1) throw ConfigError("threads", "must be >= 1");
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  RunConfig c;
  ObjectReader r(root, "");
  if (const json* p = r.find("params")) parse_params(*p, c.params);
  r.read("n_max", c.n_max);
  r.read("omega", c.omega);
  r.read("omega_grid", c.omega_grid);
  r.read("gamma_grid", c.gamma_grid);
  r.read("gamma_sweep_omega", c.gamma_sweep_omega);
  r.read("initial_states", c.initial_states);
  r.read("t_grid", c.t_grid);
  if (const json* e = r.find("evolve")) parse_evolve(*e, c.evolve);
  if (const json* t = r.find("trajectory")) parse_trajectory(*t, c.trajectory);
  if (const json* rep = r.find("repeat")) parse_repeat(*rep, c.repeat);
  if (const json* d = r.find("dfs")) parse_dfs(*d, c.dfs);
  if (const json* v = r.find("verify")) parse_verify(*v, c.verify);
  r.read("seed", c.seed);
  r.read("threads", c.threads);
  r.read("output", c.output);
  r.reject_unknown();
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace dissgate
