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

#include "dissgate/hilbert.hpp"

#include <cmath>

#include "dissgate/errors.hpp"

namespace dissgate {

std::string to_string(const BasisLabel& label) {
  return "|" + std::to_string(label.level1) + std::to_string(label.level2) + ">|" + std::to_string(label.phonons) + ">";
}

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
  // Gate dynamics needs at least one phonon excitation.
  if (n_max < 1) {
    throw ConfigError("n_max", "must be >= 1, got " + std::to_string(n_max));
  }
}

HilbertSpace build_space(int n_max) { return HilbertSpace(n_max); }

void HilbertSpace::check_level(int level, const char* what) const {
  if (level < 0 || level >= kLevelCount) {
    throw ConfigError(what, "level must be in 0..3, got " + std::to_string(level));
  }
}

void HilbertSpace::check_phonons(int phonons) const {
  if (phonons < 0 || phonons > n_max_) {
    throw ConfigError("phonons", "must be in 0.." + std::to_string(n_max_) + ", got " + std::to_string(phonons));
  }
}

Index HilbertSpace::index(int level1, int level2, int phonons) const {
  check_level(level1, "level1");
  check_level(level2, "level2");
  check_phonons(phonons);
  return (Index{kLevelCount} * level1 + level2) * phonon_dim() + phonons;
}

BasisLabel HilbertSpace::label(Index index) const {
  if (index < 0 || index >= dim()) {
    throw ConfigError("index", "out of range [0, " + std::to_string(dim()) + "): " + std::to_string(index));
  }
  const auto pd = static_cast<Index>(phonon_dim());
  const auto levels = index / pd;
  return BasisLabel{static_cast<int>(levels / kLevelCount), static_cast<int>(levels % kLevelCount),
                    static_cast<int>(index % pd)};
}

StateVector HilbertSpace::basis_state(int level1, int level2, int phonons) const {
  StateVector v = zero_state();
  v(index(level1, level2, phonons)) = 1.0;
  return v;
}

OperatorMatrix HilbertSpace::transition_op(int ion, int to, int from) const {
  if (ion != 1 && ion != 2) {
    throw ConfigError("ion", "must be 1 or 2, got " + std::to_string(ion));
  }
  check_level(to, "to");
  check_level(from, "from");
  OperatorMatrix op = OperatorMatrix::Zero(dim(), dim());
  for (int other = 0; other < kLevelCount; ++other) {
    for (int n = 0; n <= n_max_; ++n) {
      if (ion == 1) {
        op(index(to, other, n), index(from, other, n)) = 1.0;
      } else {
        op(index(other, to, n), index(other, from, n)) = 1.0;
      }
    }
  }
  return op;
}

OperatorMatrix HilbertSpace::annihilation_op() const {
  OperatorMatrix b = OperatorMatrix::Zero(dim(), dim());
  for (int l1 = 0; l1 < kLevelCount; ++l1) {
    for (int l2 = 0; l2 < kLevelCount; ++l2) {
      for (int n = 1; n <= n_max_; ++n) {
        b(index(l1, l2, n - 1), index(l1, l2, n)) = std::sqrt(static_cast<double>(n));
      }
    }
  }
  return b;
}

OperatorMatrix HilbertSpace::creation_op() const { return annihilation_op().adjoint(); }

OperatorMatrix HilbertSpace::number_op() const {
  OperatorMatrix number = OperatorMatrix::Zero(dim(), dim());
  for (Index k = 0; k < dim(); ++k) number(k, k) = label(k).phonons;
  return number;
}

OperatorMatrix HilbertSpace::phonon_layer_projector(int phonons) const {
  check_phonons(phonons);
  OperatorMatrix p = OperatorMatrix::Zero(dim(), dim());
  for (int l1 = 0; l1 < kLevelCount; ++l1) {
    for (int l2 = 0; l2 < kLevelCount; ++l2) {
      const auto k = index(l1, l2, phonons);
      p(k, k) = 1.0;
    }
  }
  return p;
}

double phonon_layer_population(const HilbertSpace& space, const StateVector& psi, int phonons) {
  double population = 0.0;
  for (int l1 = 0; l1 < kLevelCount; ++l1) {
    for (int l2 = 0; l2 < kLevelCount; ++l2) {
      population += std::norm(psi(space.index(l1, l2, phonons)));
    }
  }
  return population;
}

}  // namespace dissgate
