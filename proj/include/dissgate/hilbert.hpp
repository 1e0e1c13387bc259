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

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace dissgate {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using OperatorMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr int kIonCount = 2;
inline constexpr int kLevelCount = 4;

// One product basis ket |level1>_1 |level2>_2 |phonons>.
struct BasisLabel {
  int level1 = 0;
  int level2 = 0;
  int phonons = 0;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

std::string to_string(const BasisLabel& label);

// Composite space of two four-level ions and one truncated phonon mode.
//
// Flat index ordering is frozen: ion-1 level slowest, phonon number fastest,
//
//     index(l1, l2, n) = (4 * l1 + l2) * (n_max + 1) + n.
//
// CSV and JSON state dumps rely on this ordering. The phonon ladder is
// hard-truncated: b^dagger annihilates |n_max>, so [b, b^dagger] = 1 holds
// only on the layers n < n_max.
class HilbertSpace {
 public:
  explicit HilbertSpace(int n_max);

  int n_max() const noexcept { return n_max_; }
  int phonon_dim() const noexcept { return n_max_ + 1; }
  Index dim() const noexcept { return Index{kLevelCount * kLevelCount} * phonon_dim(); }

  Index index(int level1, int level2, int phonons) const;
  Index index(const BasisLabel& label) const { return index(label.level1, label.level2, label.phonons); }
  BasisLabel label(Index index) const;

  StateVector zero_state() const { return StateVector::Zero(dim()); }
  StateVector basis_state(int level1, int level2, int phonons) const;
  OperatorMatrix identity() const { return OperatorMatrix::Identity(dim(), dim()); }

  // |to>_ion <from| on the given ion (1 or 2), identity on the other ion and the phonons.
  OperatorMatrix transition_op(int ion, int to, int from) const;
  OperatorMatrix annihilation_op() const;
  OperatorMatrix creation_op() const;
  OperatorMatrix number_op() const;

  // Orthogonal projector onto the phonon layer |n>, all ion levels.
  OperatorMatrix phonon_layer_projector(int phonons) const;

  friend bool operator==(const HilbertSpace& a, const HilbertSpace& b) noexcept { return a.n_max_ == b.n_max_; }

 private:
  void check_level(int level, const char* what) const;
  void check_phonons(int phonons) const;

  int n_max_;
};

HilbertSpace build_space(int n_max);

// Population of psi on the phonon layer |n> (not normalized by ||psi||).
double phonon_layer_population(const HilbertSpace& space, const StateVector& psi, int phonons);

}  // namespace dissgate
