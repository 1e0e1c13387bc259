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

#include "dissgate/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dissgate/dfs.hpp"
#include "dissgate/errors.hpp"
#include "dissgate/evolve.hpp"
#include "dissgate/parallel.hpp"

namespace dissgate {
namespace {

bool is_bit(char c) { return c == '0' || c == '1'; }

StateVector qubit_ket(const HilbertSpace& space, const std::string& bits) {
  return space.basis_state(bits[0] - '0', bits[1] - '0', 0);
}

void check_qubit_support(const HilbertSpace& space, const StateVector& psi) {
  const Eigen::MatrixXcd q = qubit_basis(space);
  const double outside = (psi - q * (q.adjoint() * psi)).norm();
  if (outside > 1e-12) throw ConfigError("psi0", "must be supported on qubit levels {0,1} with phonon vacuum");
}

void check_grid(std::span<const double> grid, const char* key, double upper) {
  if (grid.empty()) throw ConfigError(key, "must be nonempty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || grid[k] > upper) {
      throw ConfigError(key, "values must lie in (0, " + std::to_string(upper) + "]");
    }
    if (k > 0 && !(grid[k] > grid[k - 1])) throw ConfigError(key, "must be sorted ascending without duplicates");
  }
}

std::vector<std::string> sorted_labels(std::span<const std::string> labels) {
  std::vector<std::string> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

}  // namespace

GateSpec GateSpec::cnot(SystemParams base, double omega) {
  if (!std::isfinite(omega) || !(omega > 0.0)) {
    throw ConfigError("omega", "CNOT Rabi frequency must be positive (T = 2 pi / omega)");
  }
  GateSpec spec;
  base.omega = RabiMatrix{};
  base.set_rabi(1, 1, omega);
  base.set_rabi(2, 0, omega);
  base.validate();
  spec.params = base;
  spec.omega = omega;
  spec.pulse_time = 2.0 * std::numbers::pi / omega;
  return spec;
}

QubitInput qubit_input(const HilbertSpace& space, const std::string& label) {
  if (label.size() == 2 && is_bit(label[0]) && is_bit(label[1])) {
    return {label, qubit_ket(space, label)};
  }
  if (label.size() == 5 && (label[2] == '-' || label[2] == '+') && is_bit(label[0]) && is_bit(label[1]) &&
      is_bit(label[3]) && is_bit(label[4])) {
    const std::string first = label.substr(0, 2);
    const std::string second = label.substr(3, 2);
    if (first == second) throw ConfigError("initial_states", "superposition of a state with itself: " + label);
    const double sign = label[2] == '-' ? -1.0 : 1.0;
    return {label, (qubit_ket(space, first) + sign * qubit_ket(space, second)) / std::sqrt(2.0)};
  }
  throw ConfigError("initial_states", "unrecognized qubit state label '" + label + "'");
}

std::vector<std::string> standard_inputs() { return {"00", "10", "10-11", "11"}; }

std::vector<std::string> worst_case_inputs() { return {"00", "01", "10", "10-11", "11"}; }

OperatorMatrix ideal_cnot(const HilbertSpace& space) {
  OperatorMatrix u = space.identity();
  const Index k10 = space.index(1, 0, 0);
  const Index k11 = space.index(1, 1, 0);
  u(k10, k10) = 0.0;
  u(k11, k11) = 0.0;
  u(k10, k11) = 1.0;
  u(k11, k10) = 1.0;
  return u;
}

OperatorMatrix cnot_effective_hamiltonian(const HilbertSpace& space, double omega) {
  const StateVector bright = space.basis_state(1, 0, 0) - space.basis_state(1, 1, 0);
  const StateVector a = antisymmetric_state(space, 0);
  const OperatorMatrix coupling = (omega / (2.0 * std::sqrt(2.0))) * bright * a.adjoint();
  return coupling + coupling.adjoint();
}

Eigen::MatrixXcd qubit_basis(const HilbertSpace& space) {
  Eigen::MatrixXcd q(space.dim(), 4);
  q.col(0) = space.basis_state(0, 0, 0);
  q.col(1) = space.basis_state(0, 1, 0);
  q.col(2) = space.basis_state(1, 0, 0);
  q.col(3) = space.basis_state(1, 1, 0);
  return q;
}

OperatorMatrix gate_propagator(const HilbertSpace& space, const GateSpec& spec) {
  return propagator(build_h_total(space, spec.params), spec.pulse_time);
}

namespace {

GateRecord record_from(const OperatorMatrix& u_cond, const OperatorMatrix& u_gate, const GateSpec& spec,
                       const HilbertSpace& space, const QubitInput& input) {
  require_normalized(input.state, "psi0");
  check_qubit_support(space, input.state);
  const StateVector out = u_cond * input.state;
  GateRecord r;
  r.initial_label = input.label;
  r.omega = spec.omega;
  r.gamma3 = spec.params.gamma3;
  r.g3 = spec.params.g3;
  r.p0 = out.squaredNorm();
  if (r.p0 < kMinConditionalProbability) {
    throw NumericalError("no-photon probability vanished for input " + input.label);
  }
  const StateVector target = u_gate * input.state;
  r.fidelity = std::min(1.0, std::norm(target.dot(out)) / r.p0);
  r.p0 = std::min(1.0, r.p0);
  return r;
}

}  // namespace

GateRecord gate_metrics(const HilbertSpace& space, const GateSpec& spec, const QubitInput& input) {
  return record_from(gate_propagator(space, spec), ideal_cnot(space), spec, space, input);
}

std::vector<GateRecord> gate_metrics(const HilbertSpace& space, const GateSpec& spec,
                                     std::span<const std::string> labels) {
  const OperatorMatrix u_cond = gate_propagator(space, spec);
  const OperatorMatrix u_gate = ideal_cnot(space);
  std::vector<GateRecord> records;
  for (const auto& label : sorted_labels(labels)) {
    records.push_back(record_from(u_cond, u_gate, spec, space, qubit_input(space, label)));
  }
  return records;
}

EffectiveGateReport effective_gate_check(const HilbertSpace& space, const GateSpec& spec) {
  EffectiveGateReport report;
  report.omega = spec.omega;
  const Eigen::MatrixXcd q = qubit_basis(space);
  const Eigen::Matrix4cd target = q.adjoint() * ideal_cnot(space) * q;

  const OperatorMatrix u_eff = propagator(cnot_effective_hamiltonian(space, spec.omega), spec.pulse_time);
  const Eigen::MatrixXcd image = u_eff * q;
  const Eigen::Matrix4cd block = q.adjoint() * image;
  const double leakage = (image - q * block).cwiseAbs().maxCoeff();
  report.effective_error = std::max((block - target).cwiseAbs().maxCoeff(), leakage);
  const StateVector a = antisymmetric_state(space, 0);
  report.antisymmetric_phase = a.dot(u_eff * a);

  const Eigen::Matrix4cd full_block = q.adjoint() * gate_propagator(space, spec) * q;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(full_block - target);
  report.propagator_deviation = svd.singularValues()(0);
  return report;
}

std::vector<GateRecord> sweep_rabi(const HilbertSpace& space, const SystemParams& base,
                                   std::span<const double> omega_grid, std::span<const std::string> labels,
                                   int threads) {
  check_grid(omega_grid, "omega_grid", 0.5);
  if (labels.empty()) throw ConfigError("initial_states", "must be nonempty");
  std::vector<std::vector<GateRecord>> per_point(omega_grid.size());
  parallel_for(omega_grid.size(), threads, [&](std::size_t k) {
    per_point[k] = gate_metrics(space, GateSpec::cnot(base, omega_grid[k]), labels);
  });
  std::vector<GateRecord> records;
  for (auto& point : per_point) records.insert(records.end(), point.begin(), point.end());
  return records;
}

std::vector<GateRecord> sweep_gamma(const HilbertSpace& space, const SystemParams& base,
                                    std::span<const double> gamma_grid, double omega,
                                    std::span<const std::string> labels, int threads) {
  check_grid(gamma_grid, "gamma_grid", 50.0);
  if (labels.empty()) throw ConfigError("initial_states", "must be nonempty");
  std::vector<std::vector<GateRecord>> per_point(gamma_grid.size());
  parallel_for(gamma_grid.size(), threads, [&](std::size_t k) {
    SystemParams p = base;
    p.gamma3 = gamma_grid[k];
    p.g3 = gamma_grid[k];
    per_point[k] = gate_metrics(space, GateSpec::cnot(p, omega), labels);
  });
  std::vector<GateRecord> records;
  for (auto& point : per_point) records.insert(records.end(), point.begin(), point.end());
  return records;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("loglog_slope", "need >= 2 paired samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw ConfigError("loglog_slope", "samples must be positive");
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dissgate
