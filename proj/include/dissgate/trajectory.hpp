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
#include <map>
#include <vector>

#include "dissgate/gates.hpp"
#include "dissgate/hamiltonian.hpp"
#include "dissgate/hilbert.hpp"

namespace dissgate {

// Quantum-jump unraveling of the conditional dynamics.
//
// Each trajectory owns a private RNG stream, seeded with
// stream_seed(seed, index) = splitmix64(seed ^ splitmix64(index + 1)), so
// trajectories can run in any order or on any number of threads with
// bit-identical results.
struct JumpConfig {
  std::vector<OperatorMatrix> jump_ops;
  int destination_level = 1;
  std::size_t n_traj = 1000;
  std::uint64_t seed = 1;
  double t_final = 1.0;
  std::size_t histogram_bins = 50;
  // Coarse propagation steps per t_final; jump times are resolved by dyadic
  // bisection down to t_final / (coarse_steps * 2^bisection_depth).
  std::size_t coarse_steps = 64;
  int bisection_depth = 40;
  int threads = 1;
};

// Jump operators sqrt(Gamma3) |destination>_i<3| for i = 1, 2.
std::vector<OperatorMatrix> decay_jump_ops(const HilbertSpace& space, double gamma3, int destination_level = 1);

JumpConfig default_jump_config(const HilbertSpace& space, const SystemParams& params, double t_final,
                               std::size_t n_traj, std::uint64_t seed);

// Max-entry deviation of sum_k J_k^dagger J_k from 2 K, K the dissipative part of h.
double unraveling_mismatch(const OperatorMatrix& h, const std::vector<OperatorMatrix>& jump_ops);

struct TrajectoryStats {
  std::size_t n_traj = 0;
  std::size_t n_no_jump = 0;
  std::size_t n_aborted = 0;
  double p0_estimate = 0.0;
  double standard_error = 0.0;
  // Histogram of all jump times (not only first jumps) over [0, t_final].
  std::vector<double> histogram_edges;
  std::vector<std::size_t> histogram_counts;
  // Time of the first jump of every trajectory that jumped, in trajectory order.
  std::vector<double> first_jump_times;
  std::size_t total_jumps = 0;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

// Waiting-time algorithm: draw r ~ U(0,1), evolve under h until ||psi||^2 = r,
// pick channel k with probability ~ ||J_k psi||^2, apply and renormalize,
// repeat until t_final.
TrajectoryStats run_trajectories(const OperatorMatrix& h, const JumpConfig& config, const StateVector& psi0);

struct RestartStats {
  std::size_t n_runs = 0;
  // attempts -> number of runs that needed that many attempts
  std::map<std::size_t, std::size_t> attempt_counts;
  double mean_attempts = 0.0;
  double variance_attempts = 0.0;
  // Empirical success rate n_runs / total attempts.
  double success_rate = 0.0;
};

// Repeat-until-no-emission: each attempt is one gate-length trajectory; a run
// ends at the first attempt without a jump. Attempts per run follow a geometric
// law with mean 1 / P0. Throws NumericalError after max_attempts in one run.
RestartStats restart_protocol_estimate(const HilbertSpace& space, const GateSpec& spec, const QubitInput& input,
                                       const JumpConfig& jumps, std::size_t n_runs,
                                       std::size_t max_attempts = 1'000'000);

}  // namespace dissgate
