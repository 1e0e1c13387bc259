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


// Test-only reference implementations. Nothing here calls into the library
// except for types, so each oracle is an independent route to the same number.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

inline Eigen::Index index(int n_max, int l1, int l2, int n) { return (4 * l1 + l2) * (n_max + 1) + n; }

inline Eigen::VectorXcd ket(int n_max, int l1, int l2, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16 * (n_max + 1));
  v(index(n_max, l1, l2, n)) = 1.0;
  return v;
}

inline Eigen::VectorXcd antisymmetric(int n_max) {
  return (ket(n_max, 1, 2, 0) - ket(n_max, 2, 1, 0)) / std::sqrt(2.0);
}

// Conditional Hamiltonian written out matrix element by matrix element:
// sum_i i[g2 |1><2| b+ + g3 |1><3| b+ - h.c.] - (i/2) Gamma3 sum_i |3><3|, g2 = 1.
inline Eigen::MatrixXcd h_cond(int n_max, double g3, double gamma3) {
  const int dim = 16 * (n_max + 1);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const double g[4] = {0.0, 0.0, 1.0, g3};
  for (int l1 = 0; l1 < 4; ++l1)
    for (int l2 = 0; l2 < 4; ++l2)
      for (int n = 0; n <= n_max; ++n) {
        const auto from = index(n_max, l1, l2, n);
        h(from, from) += -0.5 * I * gamma3 * double((l1 == 3) + (l2 == 3));
        if (n + 1 > n_max) continue;
        const double up = std::sqrt(double(n + 1));
        for (int hi : {2, 3}) {
          // ion 1: |hi, n> -> |1, n+1> with i g, reverse with -i g.
          if (l1 == hi) {
            const auto to = index(n_max, 1, l2, n + 1);
            h(to, from) += I * g[hi] * up;
            h(from, to) += -I * g[hi] * up;
          }
          if (l2 == hi) {
            const auto to = index(n_max, l1, 1, n + 1);
            h(to, from) += I * g[hi] * up;
            h(from, to) += -I * g[hi] * up;
          }
        }
      }
  return h;
}

// Analytic projected drive: (1/(2 sqrt 2)) [-O0^(1) |01> + O0^(2) |10> + (O1^(2) - O1^(1)) |11>] <a| + h.c.,
// on the zero-phonon layer. rabi[ion-1][j].
inline Eigen::MatrixXcd h_eff(int n_max, const cd (&rabi)[2][2]) {
  const Eigen::VectorXcd v = (-rabi[0][0] * ket(n_max, 0, 1, 0) + rabi[1][0] * ket(n_max, 1, 0, 0) +
                              (rabi[1][1] - rabi[0][1]) * ket(n_max, 1, 1, 0)) /
                             (2.0 * std::sqrt(2.0));
  const Eigen::MatrixXcd half = v * antisymmetric(n_max).adjoint();
  return half + half.adjoint();
}

// Closed sector {|3,0,0>, |1,0,1>, |2,0,0>} reached from basis(3,0,0) at zero drive.
inline Eigen::Matrix3cd decay_sector(double g3, double gamma3) {
  Eigen::Matrix3cd h;
  h << -0.5 * I * gamma3, -I * g3, 0.0,
       I * g3, 0.0, I,
       0.0, -I, 0.0;
  return h;
}

// ||exp(-i H t) e0||^2 by eigen-decomposition of a small diagonalizable H.
inline double p0_by_eigendecomposition(const Eigen::Matrix3cd& h, double t) {
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(h);
  const Eigen::Matrix3cd v = es.eigenvectors();
  Eigen::Vector3cd phase;
  for (int k = 0; k < 3; ++k) phase(k) = std::exp(-I * es.eigenvalues()(k) * t);
  const Eigen::Vector3cd psi = v * phase.asDiagonal() * v.inverse() * Eigen::Vector3cd::UnitX();
  return psi.squaredNorm();
}

// Smallest M with (1 - p0^N)^M <= 1 - target, by direct iteration.
inline std::uint64_t min_repeats_scan(double p0, std::uint64_t n, double target) {
  const double fail = 1.0 - std::pow(p0, double(n));
  double p = 1.0;
  for (std::uint64_t m = 1;; ++m) {
    p *= fail;
    if (p <= 1.0 - target) return m;
  }
}

// One-sample Kolmogorov-Smirnov test against Exp(rate); returns the asymptotic p-value.
inline double ks_exponential_pvalue(std::vector<double> x, double rate) {
  std::sort(x.begin(), x.end());
  const double n = double(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cdf = 1.0 - std::exp(-rate * x[i]);
    d = std::max({d, double(i + 1) / n - cdf, cdf - double(i) / n});
  }
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace oracle
