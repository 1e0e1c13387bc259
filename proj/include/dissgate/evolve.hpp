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
#include <vector>

#include "dissgate/hamiltonian.hpp"
#include "dissgate/hilbert.hpp"

namespace dissgate {

// Tolerance on ||psi0|| - 1 accepted for "normalized" inputs.
inline constexpr double kNormTolerance = 1e-10;

// Below this no-photon probability the normalized conditional state is undefined.
inline constexpr double kMinConditionalProbability = 1e-14;

// No-photon evolution of a normalized initial state over a duration t (units of 1/g2).
struct PropagationResult {
  StateVector unnormalized;
  StateVector normalized;
  double p0 = 0.0;
  double t = 0.0;
};

// exp(-i H t) for a time-independent, generally non-Hermitian H.
//
// Dense Pade scaling-and-squaring (backward error at unit roundoff), applied
// per connected block of the coupling graph. Throws NumericalError if the
// result is not finite.
OperatorMatrix propagator(const OperatorMatrix& h, double t);

// P0(t) = ||exp(-i H t) psi0||^2. psi0 must be normalized.
double no_photon_probability(const OperatorMatrix& h, const StateVector& psi0, double t);

// Throws NumericalError when p0 < kMinConditionalProbability.
PropagationResult conditional_state(const OperatorMatrix& h, const StateVector& psi0, double t);

// P0 along an ascending time grid starting at t >= 0.
std::vector<double> p0_trace(const OperatorMatrix& h, const StateVector& psi0, std::span<const double> t_grid);

// Unnormalized conditional states along an ascending time grid, one column per time.
Eigen::MatrixXcd evolve_on_grid(const OperatorMatrix& h, const StateVector& psi0, std::span<const double> t_grid);

// Classical fixed-step RK4 integration of d/dt psi = -i H psi for every column
// of `states`. Independent of the matrix-exponential path; used as its oracle.
Eigen::MatrixXcd integrate_fixed_step(const OperatorMatrix& h, const Eigen::MatrixXcd& states, double t,
                                      double max_step);

// 1e-3 / max(Gamma3, g2, g3).
double oracle_step(const SystemParams& params);

void require_normalized(const StateVector& psi, const char* what);

}  // namespace dissgate
