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

#include "dissgate/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseCore>
#include <unsupported/Eigen/MatrixFunctions>

#include "dissgate/errors.hpp"

namespace dissgate {
namespace {

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ConfigError("t", "duration must be finite and >= 0");
  }
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw ConfigError("t_grid", "must be nonempty");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    check_time(t_grid[k]);
    if (k > 0 && t_grid[k] < t_grid[k - 1]) throw ConfigError("t_grid", "must be sorted ascending");
  }
}

// Index sets of the connected components of H's coupling graph. exp(-iHt)
// factorizes over them, and uncoupled states keep their amplitude exactly.
std::vector<std::vector<Index>> coupled_blocks(const OperatorMatrix& h) {
  const Index n = h.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) parent[k] = k;
  const auto root = [&](Index k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r)
      if (r != c && h(r, c) != Complex{}) parent[root(r)] = root(c);
  std::vector<std::vector<Index>> blocks;
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index k = 0; k < n; ++k) {
    const Index r = root(k);
    if (slot[r] < 0) {
      slot[r] = static_cast<Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(k);
  }
  return blocks;
}

}  // namespace

void require_normalized(const StateVector& psi, const char* what) {
  const double norm = psi.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "state must be normalized, ||psi|| = " << norm;
    throw ConfigError(what, msg.str());
  }
}

OperatorMatrix propagator(const OperatorMatrix& h, double t) {
  check_time(t);
  if (h.rows() != h.cols()) throw ConfigError("h", "must be square");
  if (t == 0.0) return OperatorMatrix::Identity(h.rows(), h.cols());
  OperatorMatrix u = OperatorMatrix::Zero(h.rows(), h.cols());
  for (const auto& block : coupled_blocks(h)) {
    if (block.size() == 1) {
      u(block[0], block[0]) = std::exp(Complex(0.0, -t) * h(block[0], block[0]));
      continue;
    }
    const OperatorMatrix generator = Complex(0.0, -t) * h(block, block);
    const OperatorMatrix block_u = generator.exp();
    u(block, block) = block_u;
  }
  if (!u.allFinite()) {
    std::ostringstream msg;
    msg << "matrix exponential overflowed for t = " << t << ", ||H||_F = " << h.norm();
    throw NumericalError(msg.str());
  }
  return u;
}

double no_photon_probability(const OperatorMatrix& h, const StateVector& psi0, double t) {
  require_normalized(psi0, "psi0");
  return (propagator(h, t) * psi0).squaredNorm();
}

PropagationResult conditional_state(const OperatorMatrix& h, const StateVector& psi0, double t) {
  require_normalized(psi0, "psi0");
  PropagationResult result;
  result.t = t;
  result.unnormalized = propagator(h, t) * psi0;
  result.p0 = result.unnormalized.squaredNorm();
  if (!(result.p0 >= kMinConditionalProbability)) {
    std::ostringstream msg;
    msg << "no-photon probability " << result.p0 << " at t = " << t << " is below " << kMinConditionalProbability
        << "; conditional state undefined";
    throw NumericalError(msg.str());
  }
  result.normalized = result.unnormalized / std::sqrt(result.p0);
  return result;
}

Eigen::MatrixXcd evolve_on_grid(const OperatorMatrix& h, const StateVector& psi0, std::span<const double> t_grid) {
  check_grid(t_grid);
  Eigen::MatrixXcd states(psi0.size(), static_cast<Index>(t_grid.size()));
  StateVector psi = propagator(h, t_grid.front()) * psi0;
  states.col(0) = psi;
  // Uniform grids reuse one step propagator.
  double cached_dt = -1.0;
  OperatorMatrix step;
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double dt = t_grid[k] - t_grid[k - 1];
    if (std::abs(dt - cached_dt) > 1e-15 * std::max(1.0, dt)) {
      step = propagator(h, dt);
      cached_dt = dt;
    }
    psi = step * psi;
    states.col(static_cast<Index>(k)) = psi;
  }
  return states;
}

std::vector<double> p0_trace(const OperatorMatrix& h, const StateVector& psi0, std::span<const double> t_grid) {
  require_normalized(psi0, "psi0");
  const Eigen::MatrixXcd states = evolve_on_grid(h, psi0, t_grid);
  std::vector<double> p0(t_grid.size());
  for (Index k = 0; k < states.cols(); ++k) p0[static_cast<std::size_t>(k)] = states.col(k).squaredNorm();
  return p0;
}

Eigen::MatrixXcd integrate_fixed_step(const OperatorMatrix& h, const Eigen::MatrixXcd& states, double t,
                                      double max_step) {
  check_time(t);
  if (!(max_step > 0.0)) throw ConfigError("max_step", "must be positive");
  const auto n_steps = static_cast<long>(std::ceil(t / max_step));
  if (n_steps == 0) return states;
  const double dt = t / static_cast<double>(n_steps);

  const OperatorMatrix dense_generator = Complex(0.0, -1.0) * h;
  const Eigen::SparseMatrix<Complex> generator = dense_generator.sparseView();

  Eigen::MatrixXcd y = states;
  Eigen::MatrixXcd k1, k2, k3, k4;
  for (long s = 0; s < n_steps; ++s) {
    k1 = generator * y;
    k2 = generator * (y + 0.5 * dt * k1);
    k3 = generator * (y + 0.5 * dt * k2);
    k4 = generator * (y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

double oracle_step(const SystemParams& params) {
  return 1e-3 / std::max({params.gamma3, SystemParams::g2, params.g3});
}

}  // namespace dissgate
