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

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "dissgate/hilbert.hpp"

namespace dissgate {

// Weak-drive Rabi frequencies, rabi[ion - 1][j] for the j-2 transition, j in {0, 1}.
using RabiMatrix = std::array<std::array<Complex, 2>, 2>;

// Physical constants in units of g2 (hbar = 1, g2 = 1).
struct SystemParams {
  static constexpr double g2 = 1.0;
  double g3 = std::sqrt(2.0);
  double gamma3 = 2.0 * std::sqrt(37.0);
  RabiMatrix omega{};

  // Gamma3 = 2 sqrt(37) g2, g3 = sqrt(2) g2, no weak drive.
  static SystemParams benchmark() { return SystemParams{}; }

  Complex rabi(int ion, int level) const;
  void set_rabi(int ion, int level, Complex value);
  double max_rabi() const;

  // Throws ConfigError unless g3 > 0 and gamma3 > 0 and all entries are finite.
  void validate() const;
};

// Non-empty when max|Omega| exceeds 0.3 min(g2, g3, Gamma3), i.e. the weak-drive
// assumption behind the effective Hamiltonian is questionable. Not an error.
std::optional<std::string> weak_drive_warning(const SystemParams& params);

// H_cond = sum_i i[g2 |1><2| b+ + g3 |1><3| b+ - h.c.] - (i/2) Gamma3 sum_i |3><3|.
OperatorMatrix build_h_cond(const HilbertSpace& space, const SystemParams& params);

// H_laser = sum_i sum_{j=0,1} (1/2) Omega_j^(i) |j>_i<2| + h.c.
OperatorMatrix build_h_laser(const HilbertSpace& space, const SystemParams& params);

OperatorMatrix build_h_total(const HilbertSpace& space, const SystemParams& params);

// D = sum_i |3>_i<3|; the anti-Hermitian part of H_cond is -(i/2) Gamma3 D.
OperatorMatrix decay_operator(const HilbertSpace& space);

// K = (H^dagger - H) / 2i, so that H = (Hermitian part) - i K. For H_cond, K = (Gamma3 / 2) D.
OperatorMatrix dissipative_part(const OperatorMatrix& h);

}  // namespace dissgate
