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

#include "dissgate/dfs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dissgate/errors.hpp"
#include "dissgate/evolve.hpp"

namespace dissgate {
namespace {

constexpr double kDfsP0Floor = 1.0 - 1e-8;
constexpr double kDecayedP0Ceiling = 1.0 - 1e-3;
constexpr double kDefaultRealTolerance = 1e-9;
constexpr double kDefectTolerance = 1e-6;
constexpr double kConditionLimit = 1e12;

// Diagonal weight used to rotate degenerate real-eigenvalue clusters: 1 on the
// n_max layer, 1/2 on the uncoupled |00>|n_max>, 0 elsewhere. Eigenvectors of
// its restriction separate truncation artifacts from the physical DFS.
Eigen::VectorXd truncation_weight(const HilbertSpace& space) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(space.dim());
  for (int l1 = 0; l1 < kLevelCount; ++l1)
    for (int l2 = 0; l2 < kLevelCount; ++l2) w(space.index(l1, l2, space.n_max())) = 1.0;
  w(space.index(0, 0, space.n_max())) = 0.5;
  return w;
}

double excess_truncation_population(const HilbertSpace& space, const StateVector& v) {
  return phonon_layer_population(space, v, space.n_max()) - std::norm(v(space.index(0, 0, space.n_max())));
}

struct Cluster {
  std::vector<Index> members;
  Complex centre;
};

std::vector<Cluster> cluster_real_eigenvalues(const Eigen::VectorXcd& values, std::vector<Index> real,
                                              double tolerance) {
  std::sort(real.begin(), real.end(), [&](Index a, Index b) { return values(a).real() < values(b).real(); });
  std::vector<Cluster> clusters;
  for (Index i : real) {
    if (clusters.empty() || std::abs(values(i) - values(clusters.back().members.back())) > tolerance) {
      clusters.push_back({});
    }
    clusters.back().members.push_back(i);
  }
  for (auto& c : clusters) {
    Complex sum{};
    for (Index i : c.members) sum += values(i);
    c.centre = Complex(sum.real() / static_cast<double>(c.members.size()), 0.0);
  }
  return clusters;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

bool DfsDecomposition::is_dfs(Index i) const {
  return std::binary_search(dfs_indices.begin(), dfs_indices.end(), i);
}

DfsDecomposition extract_dfs(const OperatorMatrix& h_cond, const HilbertSpace& space, const DfsOptions& options) {
  if (h_cond.rows() != space.dim() || h_cond.cols() != space.dim()) {
    throw ConfigError("h_cond", "shape does not match the Hilbert space");
  }
  const Index dim = space.dim();
  const double scale = h_cond.norm() > 0.0 ? h_cond.norm() : 1.0;

  DfsDecomposition d;
  d.tol_real = options.tol_real.value_or(kDefaultRealTolerance * scale);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h_cond, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw NumericalError("complex eigensolver did not converge");
  d.eigenvalues = solver.eigenvalues();
  d.eigenvectors = solver.eigenvectors();
  d.eigenvectors.colwise().normalize();

  for (Index i = 0; i < dim; ++i) {
    if (std::abs(d.eigenvalues(i).imag()) <= d.tol_real) d.real_indices.push_back(i);
  }

  const Eigen::VectorXd weight = truncation_weight(space);
  for (const Cluster& cluster : cluster_real_eigenvalues(d.eigenvalues, d.real_indices, d.tol_real)) {
    const auto m = static_cast<Index>(cluster.members.size());
    const OperatorMatrix shifted = h_cond - cluster.centre * OperatorMatrix::Identity(dim, dim);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    if (sigma(dim - m) > kDefectTolerance * scale) {
      std::ostringstream msg;
      msg << "real eigenvalue " << cluster.centre.real() << " has algebraic multiplicity " << m
          << " but its eigenspace is smaller (singular value " << sigma(dim - m) << "); H_cond is defective there";
      throw NumericalError(msg.str());
    }
    const Eigen::MatrixXcd null_space = svd.matrixV().rightCols(m);
    const Eigen::MatrixXcd restricted = null_space.adjoint() * weight.asDiagonal() * null_space;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> align(restricted);
    const Eigen::MatrixXcd aligned = null_space * align.eigenvectors();
    for (Index k = 0; k < m; ++k) {
      const Index i = cluster.members[static_cast<std::size_t>(k)];
      d.eigenvectors.col(i) = aligned.col(k);
      d.eigenvalues(i) = cluster.centre;
    }
  }
  std::sort(d.real_indices.begin(), d.real_indices.end());

  Eigen::JacobiSVD<Eigen::MatrixXcd> cond_svd(d.eigenvectors);
  const Eigen::VectorXd& sv = cond_svd.singularValues();
  d.eigenvector_condition = sv(dim - 1) > 0.0 ? sv(0) / sv(dim - 1) : std::numeric_limits<double>::infinity();
  d.diagonalizable = std::isfinite(d.eigenvector_condition) && d.eigenvector_condition < kConditionLimit;
  d.reciprocal = d.eigenvectors.fullPivLu().inverse().adjoint();

  d.truncation_population.resize(dim);
  for (Index i = 0; i < dim; ++i) {
    d.truncation_population(i) = phonon_layer_population(space, d.eigenvectors.col(i), space.n_max());
  }

  for (Index i : d.real_indices) {
    if (!options.truncation_filter ||
        excess_truncation_population(space, d.eigenvectors.col(i)) <= options.tol_trunc) {
      d.dfs_indices.push_back(i);
    }
  }

  Eigen::MatrixXcd retained(dim, static_cast<Index>(d.dfs_indices.size()));
  for (std::size_t k = 0; k < d.dfs_indices.size(); ++k) {
    retained.col(static_cast<Index>(k)) = d.eigenvectors.col(d.dfs_indices[k]);
  }
  d.dfs_basis = orthonormalize(retained, options.pivot_tol);
  d.projector = d.dfs_basis * d.dfs_basis.adjoint();
  return d;
}

OperatorMatrix dfs_projector(const DfsDecomposition& decomposition) { return decomposition.projector; }

OperatorMatrix effective_hamiltonian(const OperatorMatrix& h, const OperatorMatrix& projector) {
  if (h.rows() != projector.rows() || h.cols() != projector.cols()) {
    throw ConfigError("projector", "shape does not match the Hamiltonian");
  }
  return projector * h * projector;
}

OperatorMatrix reconstruct(const DfsDecomposition& d) {
  return d.eigenvectors * d.eigenvalues.asDiagonal() * d.reciprocal.adjoint();
}

StateVector antisymmetric_state(const HilbertSpace& space, int phonons) {
  return (space.basis_state(1, 2, phonons) - space.basis_state(2, 1, phonons)) / std::sqrt(2.0);
}

std::vector<StateVector> analytic_dfs_reference(const HilbertSpace& space) {
  std::vector<StateVector> states;
  for (int n = 0; n <= space.n_max(); ++n) states.push_back(space.basis_state(0, 0, n));
  states.push_back(space.basis_state(0, 1, 0));
  states.push_back(space.basis_state(1, 0, 0));
  states.push_back(space.basis_state(1, 1, 0));
  states.push_back(antisymmetric_state(space, 0));
  return states;
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& vectors, double pivot_tol) {
  Eigen::MatrixXcd work = vectors;
  const Index n = work.cols();
  double largest = 0.0;
  for (Index j = 0; j < n; ++j) largest = std::max(largest, work.col(j).norm());
  Eigen::MatrixXcd basis(work.rows(), 0);
  if (largest == 0.0) return basis;

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index step = 0; step < n; ++step) {
    Index pivot = -1;
    double pivot_norm = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double r = work.col(j).norm();
      if (r > pivot_norm) {
        pivot_norm = r;
        pivot = j;
      }
    }
    if (pivot < 0 || pivot_norm <= pivot_tol * largest) break;
    used[static_cast<std::size_t>(pivot)] = true;
    StateVector q = work.col(pivot) / pivot_norm;
    // Second pass keeps q orthogonal to the basis at roundoff level.
    q -= basis * (basis.adjoint() * q);
    q.normalize();
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = q;
    for (Index j = 0; j < n; ++j) {
      if (!used[static_cast<std::size_t>(j)]) work.col(j) -= q * q.dot(work.col(j));
    }
  }
  return basis;
}

double projection_residual(const OperatorMatrix& projector, const Eigen::MatrixXcd& vectors) {
  double worst = 0.0;
  for (Index k = 0; k < vectors.cols(); ++k) {
    const StateVector v = vectors.col(k);
    const double norm = v.norm();
    if (norm == 0.0) continue;
    worst = std::max(worst, (v - projector * v).norm() / norm);
  }
  return worst;
}

double projection_residual(const OperatorMatrix& projector, const std::vector<StateVector>& vectors) {
  Eigen::MatrixXcd m(projector.rows(), static_cast<Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) m.col(static_cast<Index>(k)) = vectors[k];
  return projection_residual(projector, m);
}

std::string DfsVerification::summary() const {
  std::ostringstream out;
  out << (passed ? "passed" : "FAILED") << ": " << dfs_samples << " DFS samples (min P0 " << min_dfs_p0 << "), "
      << decaying_samples << " decaying eigenvectors (max final P0 " << max_decaying_final_p0 << ")";
  for (const auto& f : failures) {
    out << "\n  offending vector: " << f.description << "; P0 trace:";
    for (std::size_t k = 0; k < f.p0.size(); ++k) out << " (" << f.times[k] << ", " << f.p0[k] << ")";
  }
  return out.str();
}

DfsVerification verify_dfs(const DfsDecomposition& d, const OperatorMatrix& h_cond, double t_max, int n_samples,
                           std::uint64_t seed, int n_times) {
  if (!(t_max > 0.0)) throw ConfigError("t_max", "must be positive");
  if (n_samples < 1) throw ConfigError("n_samples", "must be >= 1");
  if (n_times < 2) throw ConfigError("n_times", "must be >= 2");

  std::vector<double> times(static_cast<std::size_t>(n_times));
  for (int k = 0; k < n_times; ++k) times[static_cast<std::size_t>(k)] = t_max * k / (n_times - 1);

  DfsVerification report;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  if (d.dimension() > 0) {
    for (int s = 0; s < n_samples; ++s) {
      Eigen::VectorXcd coeffs(d.dimension());
      for (Index k = 0; k < coeffs.size(); ++k) coeffs(k) = Complex(gauss(rng), gauss(rng));
      const StateVector psi = (d.dfs_basis * coeffs).normalized();
      const auto p0 = p0_trace(h_cond, psi, times);
      const double lowest = *std::min_element(p0.begin(), p0.end());
      report.min_dfs_p0 = std::min(report.min_dfs_p0, lowest);
      ++report.dfs_samples;
      if (lowest < kDfsP0Floor) {
        report.passed = false;
        report.failures.push_back({"random DFS vector #" + std::to_string(s), psi, times, p0});
      }
    }
  }

  std::vector<Index> decaying;
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    if (std::abs(d.eigenvalues(i).imag()) > d.tol_real) decaying.push_back(i);
  }
  const std::vector<double> endpoints{0.0, t_max};
  for (int s = 0; s < n_samples && !decaying.empty(); ++s) {
    const auto pick = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(decaying.size()));
    const Index i = decaying[std::min(pick, decaying.size() - 1)];
    const StateVector psi = d.eigenvectors.col(i);
    const auto p0 = p0_trace(h_cond, psi, endpoints);
    report.max_decaying_final_p0 = std::max(report.max_decaying_final_p0, p0.back());
    ++report.decaying_samples;
    if (p0.back() >= kDecayedP0Ceiling) {
      report.passed = false;
      std::ostringstream label;
      label << "eigenvector #" << i << " (lambda = " << d.eigenvalues(i) << ")";
      report.failures.push_back({label.str(), psi, endpoints, p0});
    }
  }
  return report;
}

}  // namespace dissgate
