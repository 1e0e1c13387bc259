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

#include <span>
#include <string>
#include <vector>

#include "dissgate/hamiltonian.hpp"
#include "dissgate/hilbert.hpp"

namespace dissgate {

// Single-pulse CNOT: Omega_1^(1) = Omega_0^(2) = omega (real), the other two
// weak drives off, pulse length T = 2 pi / omega.
struct GateSpec {
  SystemParams params;
  double omega = 0.0;
  double pulse_time = 0.0;

  // Throws ConfigError for omega <= 0 (infinite pulse) or non-finite omega.
  static GateSpec cnot(SystemParams base, double omega);
};

// A two-qubit input state on levels {0, 1} of both ions, phonon vacuum.
struct QubitInput {
  std::string label;
  StateVector state;
};

// Labels: "ab" for |ab>|0> with a, b in {0, 1}, or "ab-cd" / "ab+cd" for
// (|ab> -/+ |cd>) / sqrt 2.
QubitInput qubit_input(const HilbertSpace& space, const std::string& label);

// Reference inputs 00, 10, 11 and (10 - 11) / sqrt 2.
std::vector<std::string> standard_inputs();
// standard_inputs() plus the always-ideal 01, sorted.
std::vector<std::string> worst_case_inputs();

struct GateRecord {
  std::string initial_label;
  double p0 = 0.0;
  double fidelity = 0.0;
  double omega = 0.0;
  double gamma3 = 0.0;
  double g3 = 0.0;
};

// |00><00| + |01><01| + |10><11| + |11><10| on the qubit x |0> subspace,
// identity elsewhere.
OperatorMatrix ideal_cnot(const HilbertSpace& space);

// (omega / 2 sqrt 2) [|10> - |11>] <a| + h.c., all on the phonon vacuum.
OperatorMatrix cnot_effective_hamiltonian(const HilbertSpace& space, double omega);

// Columns |00>|0>, |01>|0>, |10>|0>, |11>|0>.
Eigen::MatrixXcd qubit_basis(const HilbertSpace& space);

// Conditional propagator exp(-i H_total T) of one gate.
OperatorMatrix gate_propagator(const HilbertSpace& space, const GateSpec& spec);

// p0 = ||U psi0||^2, fidelity = |<U_gate psi0 | U psi0 / sqrt p0>|^2.
GateRecord gate_metrics(const HilbertSpace& space, const GateSpec& spec, const QubitInput& input);

// gate_metrics for several inputs sharing one propagator.
std::vector<GateRecord> gate_metrics(const HilbertSpace& space, const GateSpec& spec,
                                     std::span<const std::string> labels);

struct EffectiveGateReport {
  double omega = 0.0;
  // max |exp(-i H_eff T) - U_gate| over qubit-block entries, plus any leakage out of the block.
  double effective_error = 0.0;
  // Phase acquired by |a>|0> under exp(-i H_eff T); -1 ideally.
  Complex antisymmetric_phase{};
  // Spectral norm of (qubit block of exp(-i H_total T)) - U_gate.
  double propagator_deviation = 0.0;
};

EffectiveGateReport effective_gate_check(const HilbertSpace& space, const GateSpec& spec);

// Records for every (omega, label), ordered by omega then label. Points are
// independent and evaluated on up to `threads` workers; results do not depend on it.
std::vector<GateRecord> sweep_rabi(const HilbertSpace& space, const SystemParams& base,
                                   std::span<const double> omega_grid, std::span<const std::string> labels,
                                   int threads = 1);

// g3 is tied to gamma3 at each point (non-DF damping rate g3^2 / Gamma3 = Gamma3).
std::vector<GateRecord> sweep_gamma(const HilbertSpace& space, const SystemParams& base,
                                    std::span<const double> gamma_grid, double omega,
                                    std::span<const std::string> labels, int threads = 1);

// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace dissgate
