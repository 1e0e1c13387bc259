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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dissgate/dfs.hpp"
#include "dissgate/hamiltonian.hpp"

namespace dissgate {

struct EvolveSettings {
  std::string initial_state = "10";
  // Full-space amplitudes (length dim, frozen index ordering); overrides initial_state.
  std::optional<std::vector<Complex>> amplitudes;
  // "cnot": CNOT drive at RunConfig::omega; "params": params.omega as given.
  std::string drive = "cnot";
  // Basis labels "l1l2_n" whose amplitudes are written, e.g. "10_0".
  std::vector<std::string> components{"00_0", "01_0", "10_0", "11_0"};
};

struct TrajectorySettings {
  std::size_t n_traj = 5000;
  // Default: one CNOT pulse, 2 pi / omega.
  std::optional<double> t_final;
  std::string initial_state = "10-11";
  std::string drive = "cnot";
  int destination_level = 1;
  std::size_t histogram_bins = 50;
  std::size_t coarse_steps = 64;
  // > 0 additionally runs the restart protocol with this many runs.
  std::size_t restart_runs = 0;
};

struct RepeatSettings {
  std::vector<double> p0{0.9, 0.95, 0.99};
  std::vector<std::uint64_t> n_gates{10, 50, 100};
  std::vector<std::uint64_t> m_runs{1, 10, 50};
  double target_success = 0.98;
};

struct VerifySettings {
  double t_max = 100.0;
  int samples = 8;
};

// Validated run configuration; every rate is a ratio to g2.
struct RunConfig {
  SystemParams params = SystemParams::benchmark();
  int n_max = 2;
  // CNOT Rabi frequency for cnot, evolve and trajectories.
  double omega = 0.2;
  std::vector<double> omega_grid{0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.07, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> gamma_grid{0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  double gamma_sweep_omega = 0.01;
  std::vector<std::string> initial_states{"00", "10", "10-11", "11"};
  // Empty: 101 points over one pulse (cnot drive) or over [0, 100] (params drive).
  std::vector<double> t_grid;
  EvolveSettings evolve;
  TrajectorySettings trajectory;
  RepeatSettings repeat;
  DfsOptions dfs;
  VerifySettings verify;
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<std::string> output;
};

// Parses and validates a JSON run configuration. Missing keys take the
// defaults above; unknown keys, malformed JSON and constraint violations throw
// ConfigError naming the offending key path.
RunConfig parse_config(std::string_view json_text);

RunConfig load_config(const std::string& path);

void validate(const RunConfig& config);

}  // namespace dissgate
