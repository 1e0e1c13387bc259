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
#include <vector>

#include "dissgate/hilbert.hpp"

namespace dissgate {

struct DfsOptions {
  // Eigenvalues with |Im lambda| <= tol_real count as real. Default: 1e-9 ||H||_F.
  std::optional<double> tol_real;
  // Maximum population on the n_max phonon layer (outside the uncoupled
  // |00>|n_max>) for a real-eigenvalue eigenvector to count as physical.
  double tol_trunc = 1e-10;
  // Relative pivot threshold of the rank-revealing orthonormalization.
  double pivot_tol = 1e-10;
  // Disable to expose the dark states fabricated by the hard phonon cutoff.
  bool truncation_filter = true;
};

// Spectral decomposition of a conditional Hamiltonian and its decoherence-free subspace.
//
// Columns of `eigenvectors` are unit-norm right eigenvectors |lambda_i>;
// columns of `reciprocal` are the dual vectors |lambda^j> with
// <lambda^j|lambda_i> = delta_ij. Eigenvectors belonging to a degenerate real
// eigenvalue are an orthonormal basis of the exact null space of
// (H - lambda), rotated so each has a definite n_max-layer population.
struct DfsDecomposition {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  Eigen::MatrixXcd reciprocal;
  // Full population of each eigenvector on the n = n_max phonon layer.
  Eigen::VectorXd truncation_population;
  std::vector<Index> real_indices;
  std::vector<Index> dfs_indices;
  Eigen::MatrixXcd dfs_basis;
  OperatorMatrix projector;
  double tol_real = 0.0;
  double eigenvector_condition = 0.0;
  bool diagonalizable = true;

  Index dimension() const noexcept { return dfs_basis.cols(); }
  bool is_dfs(Index i) const;
};

// Decomposes h_cond (built with zero weak drive) and extracts its DFS.
// Throws NumericalError if the eigensolver fails or a real eigenvalue is defective.
DfsDecomposition extract_dfs(const OperatorMatrix& h_cond, const HilbertSpace& space, const DfsOptions& options = {});

OperatorMatrix dfs_projector(const DfsDecomposition& decomposition);

// P H P.
OperatorMatrix effective_hamiltonian(const OperatorMatrix& h, const OperatorMatrix& projector);

// sum_i lambda_i |lambda_i><lambda^i|.
OperatorMatrix reconstruct(const DfsDecomposition& decomposition);

// |a> = (|12> - |21>) / sqrt 2 on the given phonon layer.
StateVector antisymmetric_state(const HilbertSpace& space, int phonons = 0);

// {|00>|n> : n <= n_max} followed by |01>|0>, |10>|0>, |11>|0>, |a>|0>.
std::vector<StateVector> analytic_dfs_reference(const HilbertSpace& space);

// Modified Gram-Schmidt with column pivoting; stops once the largest remaining
// residual drops below pivot_tol times the largest input norm.
Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& vectors, double pivot_tol = 1e-10);

// max_k ||(1 - P) v_k|| / ||v_k||.
double projection_residual(const OperatorMatrix& projector, const std::vector<StateVector>& vectors);
double projection_residual(const OperatorMatrix& projector, const Eigen::MatrixXcd& vectors);

struct P0Trace {
  std::string description;
  StateVector state;
  std::vector<double> times;
  std::vector<double> p0;
};

struct DfsVerification {
  bool passed = true;
  int dfs_samples = 0;
  int decaying_samples = 0;
  double min_dfs_p0 = 1.0;
  double max_decaying_final_p0 = 0.0;
  std::vector<P0Trace> failures;

  std::string summary() const;
};

// Random unit vectors in the DFS must keep P0(t) >= 1 - 1e-8 on [0, t_max];
// randomly chosen decaying eigenvectors must reach P0(t_max) < 1 - 1e-3.
DfsVerification verify_dfs(const DfsDecomposition& decomposition, const OperatorMatrix& h_cond, double t_max,
                           int n_samples, std::uint64_t seed = 1, int n_times = 64);

}  // namespace dissgate
