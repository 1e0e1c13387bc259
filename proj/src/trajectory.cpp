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

#include "dissgate/trajectory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "dissgate/errors.hpp"
#include "dissgate/evolve.hpp"
#include "dissgate/parallel.hpp"

namespace dissgate {
namespace {

// Open interval (0, 1), 53-bit resolution.
double uniform_open(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

// exp(-i H dt / 2^k) for k = 0..depth; the piece of 2^level ticks uses rung depth - level.
struct PropagatorLadder {
  std::vector<OperatorMatrix> rungs;
  double coarse_dt = 0.0;
  int depth = 0;

  PropagatorLadder(const OperatorMatrix& h, double coarse_dt_, int depth_) : coarse_dt(coarse_dt_), depth(depth_) {
    rungs.reserve(static_cast<std::size_t>(depth + 1));
    for (int k = 0; k <= depth; ++k) rungs.push_back(propagator(h, std::ldexp(coarse_dt, -k)));
  }

  const OperatorMatrix& piece(int level) const { return rungs[static_cast<std::size_t>(depth - level)]; }
};

struct TrajectoryOutcome {
  std::vector<double> jump_times;
  bool aborted = false;
};

TrajectoryOutcome simulate(const PropagatorLadder& ladder, const std::vector<OperatorMatrix>& jump_ops,
                           const StateVector& psi0, std::uint64_t seed, std::size_t coarse_steps) {
  std::mt19937_64 rng(seed);
  const int depth = ladder.depth;
  const std::uint64_t end = static_cast<std::uint64_t>(coarse_steps) << depth;
  const double tick_dt = std::ldexp(ladder.coarse_dt, -depth);

  TrajectoryOutcome outcome;
  StateVector psi = psi0;
  StateVector candidate(psi.size());
  double threshold = uniform_open(rng);
  std::uint64_t tick = 0;
  int limit = depth;
  while (tick < end) {
    const int aligned = tick == 0 ? depth : std::min(depth, std::countr_zero(tick));
    const int level = std::min(limit, aligned);
    candidate.noalias() = ladder.piece(level) * psi;
    if (candidate.squaredNorm() > threshold) {
      psi.swap(candidate);
      tick += std::uint64_t{1} << level;
      limit = depth;
      continue;
    }
    if (level > 0) {
      // The norm crosses the threshold inside this piece; halve it.
      limit = level - 1;
      continue;
    }
    psi.swap(candidate);
    tick += 1;
    limit = depth;

    std::vector<double> weights(jump_ops.size());
    double total = 0.0;
    for (std::size_t k = 0; k < jump_ops.size(); ++k) {
      weights[k] = (jump_ops[k] * psi).squaredNorm();
      total += weights[k];
    }
    if (!(total > 1e-14 * psi.squaredNorm())) {
      outcome.aborted = true;
      return outcome;
    }
    double pick = uniform_open(rng) * total;
    std::size_t channel = 0;
    while (channel + 1 < weights.size() && pick > weights[channel]) {
      pick -= weights[channel];
      ++channel;
    }
    psi = jump_ops[channel] * psi;
    psi /= psi.norm();
    outcome.jump_times.push_back(static_cast<double>(tick) * tick_dt);
    threshold = uniform_open(rng);
  }
  return outcome;
}

void validate(const OperatorMatrix& h, const JumpConfig& config, const StateVector& psi0) {
  if (h.rows() != h.cols() || h.rows() != psi0.size()) throw ConfigError("h", "shape mismatch with psi0");
  require_normalized(psi0, "psi0");
  if (config.n_traj < 1) throw ConfigError("trajectory.n_traj", "must be >= 1");
  if (!(config.t_final > 0.0) || !std::isfinite(config.t_final)) {
    throw ConfigError("trajectory.t_final", "must be finite and positive");
  }
  if (config.jump_ops.empty()) throw ConfigError("trajectory.jump_ops", "must be nonempty");
  for (const auto& j : config.jump_ops)
    if (j.rows() != h.rows() || j.cols() != h.cols()) throw ConfigError("trajectory.jump_ops", "shape mismatch");
  if (config.histogram_bins < 1) throw ConfigError("trajectory.histogram_bins", "must be >= 1");
  if (config.coarse_steps < 1) throw ConfigError("trajectory.coarse_steps", "must be >= 1");
  if (config.bisection_depth < 0 || config.bisection_depth > 52) {
    throw ConfigError("trajectory.bisection_depth", "must be in 0..52");
  }
  if (std::bit_width(static_cast<std::uint64_t>(config.coarse_steps)) + config.bisection_depth > 62) {
    throw ConfigError("trajectory.coarse_steps", "too many ticks for the chosen bisection depth");
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) { return splitmix64(master ^ splitmix64(index + 1)); }

std::vector<OperatorMatrix> decay_jump_ops(const HilbertSpace& space, double gamma3, int destination_level) {
  if (!(gamma3 > 0.0)) throw ConfigError("params.gamma3", "must be positive");
  if (destination_level < 0 || destination_level > 2) {
    throw ConfigError("trajectory.destination_level", "must be one of 0, 1, 2");
  }
  std::vector<OperatorMatrix> ops;
  for (int ion = 1; ion <= kIonCount; ++ion) {
    ops.push_back(std::sqrt(gamma3) * space.transition_op(ion, destination_level, 3));
  }
  return ops;
}

JumpConfig default_jump_config(const HilbertSpace& space, const SystemParams& params, double t_final,
                               std::size_t n_traj, std::uint64_t seed) {
  JumpConfig config;
  config.jump_ops = decay_jump_ops(space, params.gamma3, config.destination_level);
  config.t_final = t_final;
  config.n_traj = n_traj;
  config.seed = seed;
  return config;
}

double unraveling_mismatch(const OperatorMatrix& h, const std::vector<OperatorMatrix>& jump_ops) {
  OperatorMatrix sum = OperatorMatrix::Zero(h.rows(), h.cols());
  for (const auto& j : jump_ops) sum += j.adjoint() * j;
  return (sum - 2.0 * dissipative_part(h)).cwiseAbs().maxCoeff();
}

TrajectoryStats run_trajectories(const OperatorMatrix& h, const JumpConfig& config, const StateVector& psi0) {
  validate(h, config, psi0);
  const PropagatorLadder ladder(h, config.t_final / static_cast<double>(config.coarse_steps), config.bisection_depth);

  std::vector<TrajectoryOutcome> outcomes(config.n_traj);
  parallel_for(config.n_traj, config.threads, [&](std::size_t k) {
    outcomes[k] = simulate(ladder, config.jump_ops, psi0, stream_seed(config.seed, k), config.coarse_steps);
  });

  TrajectoryStats stats;
  stats.n_traj = config.n_traj;
  stats.histogram_counts.assign(config.histogram_bins, 0);
  stats.histogram_edges.resize(config.histogram_bins + 1);
  const double width = config.t_final / static_cast<double>(config.histogram_bins);
  for (std::size_t b = 0; b <= config.histogram_bins; ++b) stats.histogram_edges[b] = width * static_cast<double>(b);
  stats.histogram_edges.back() = config.t_final;

  for (const auto& o : outcomes) {
    if (o.aborted) {
      ++stats.n_aborted;
      continue;
    }
    if (o.jump_times.empty()) {
      ++stats.n_no_jump;
      continue;
    }
    stats.first_jump_times.push_back(o.jump_times.front());
    stats.total_jumps += o.jump_times.size();
    for (double t : o.jump_times) {
      const auto bin = std::min(config.histogram_bins - 1, static_cast<std::size_t>(t / width));
      ++stats.histogram_counts[bin];
    }
  }
  const std::size_t completed = stats.n_traj - stats.n_aborted;
  if (completed > 0) {
    const double n = static_cast<double>(completed);
    stats.p0_estimate = static_cast<double>(stats.n_no_jump) / n;
    stats.standard_error = std::sqrt(stats.p0_estimate * (1.0 - stats.p0_estimate) / n);
  }
  return stats;
}

RestartStats restart_protocol_estimate(const HilbertSpace& space, const GateSpec& spec, const QubitInput& input,
                                       const JumpConfig& jumps, std::size_t n_runs, std::size_t max_attempts) {
  if (n_runs < 1) throw ConfigError("n_runs", "must be >= 1");
  const OperatorMatrix h = build_h_total(space, spec.params);
  JumpConfig config = jumps;
  config.t_final = spec.pulse_time;
  validate(h, config, input.state);
  const PropagatorLadder ladder(h, config.t_final / static_cast<double>(config.coarse_steps), config.bisection_depth);

  std::vector<std::size_t> attempts(n_runs, 0);
  parallel_for(n_runs, config.threads, [&](std::size_t run) {
    const std::uint64_t run_seed = stream_seed(config.seed, run);
    for (std::size_t a = 0; a < max_attempts; ++a) {
      const auto o = simulate(ladder, config.jump_ops, input.state, stream_seed(run_seed, a), config.coarse_steps);
      if (!o.aborted && o.jump_times.empty()) {
        attempts[run] = a + 1;
        return;
      }
    }
    throw NumericalError("restart protocol: no successful attempt within max_attempts");
  });

  RestartStats stats;
  stats.n_runs = n_runs;
  double sum = 0.0;
  for (auto a : attempts) {
    ++stats.attempt_counts[a];
    sum += static_cast<double>(a);
  }
  stats.mean_attempts = sum / static_cast<double>(n_runs);
  double ss = 0.0;
  for (auto a : attempts) ss += (static_cast<double>(a) - stats.mean_attempts) * (static_cast<double>(a) - stats.mean_attempts);
  stats.variance_attempts = n_runs > 1 ? ss / static_cast<double>(n_runs - 1) : 0.0;
  stats.success_rate = static_cast<double>(n_runs) / sum;
  return stats;
}

}  // namespace dissgate
