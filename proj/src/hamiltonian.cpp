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

#include "dissgate/hamiltonian.hpp"

#include <algorithm>
#include <sstream>

#include "dissgate/errors.hpp"

namespace dissgate {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_rabi_index(int ion, int level) {
  if (ion != 1 && ion != 2) throw ConfigError("omega", "ion must be 1 or 2");
  if (level != 0 && level != 1) throw ConfigError("omega", "lower level must be 0 or 1");
}

}  // namespace

Complex SystemParams::rabi(int ion, int level) const {
  check_rabi_index(ion, level);
  return omega[ion - 1][level];
}

void SystemParams::set_rabi(int ion, int level, Complex value) {
  check_rabi_index(ion, level);
  omega[ion - 1][level] = value;
}

double SystemParams::max_rabi() const {
  double m = 0.0;
  for (const auto& row : omega)
    for (const auto& w : row) m = std::max(m, std::abs(w));
  return m;
}

void SystemParams::validate() const {
  if (!(g3 > 0.0) || !std::isfinite(g3)) throw ConfigError("params.g3", "must be a finite positive rate");
  if (!(gamma3 > 0.0) || !std::isfinite(gamma3)) {
    throw ConfigError("params.gamma3", "must be a finite positive rate");
  }
  for (const auto& row : omega)
    for (const auto& w : row)
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw ConfigError("params.omega", "must be finite");
}

std::optional<std::string> weak_drive_warning(const SystemParams& params) {
  const double scale = std::min({SystemParams::g2, params.g3, params.gamma3});
  const double drive = params.max_rabi();
  if (drive <= 0.3 * scale) return std::nullopt;
  std::ostringstream msg;
  msg << "weak-drive regime violated: max|Omega| = " << drive << " exceeds 0.3 * min(g2, g3, Gamma3) = " << 0.3 * scale
      << "; effective-Hamiltonian predictions are unreliable";
  return msg.str();
}

OperatorMatrix build_h_cond(const HilbertSpace& space, const SystemParams& params) {
  params.validate();
  const OperatorMatrix b_dag = space.creation_op();
  OperatorMatrix h = OperatorMatrix::Zero(space.dim(), space.dim());
  for (int ion = 1; ion <= kIonCount; ++ion) {
    const OperatorMatrix raise = kI * (SystemParams::g2 * space.transition_op(ion, 1, 2) * b_dag +
                                       params.g3 * space.transition_op(ion, 1, 3) * b_dag);
    h += raise + raise.adjoint();
    h -= 0.5 * kI * params.gamma3 * space.transition_op(ion, 3, 3);
  }
  return h;
}

OperatorMatrix build_h_laser(const HilbertSpace& space, const SystemParams& params) {
  params.validate();
  OperatorMatrix h = OperatorMatrix::Zero(space.dim(), space.dim());
  for (int ion = 1; ion <= kIonCount; ++ion) {
    for (int j = 0; j <= 1; ++j) {
      const Complex w = params.rabi(ion, j);
      if (w == Complex{}) continue;
      const OperatorMatrix term = 0.5 * w * space.transition_op(ion, j, 2);
      h += term + term.adjoint();
    }
  }
  return h;
}

OperatorMatrix build_h_total(const HilbertSpace& space, const SystemParams& params) {
  return build_h_cond(space, params) + build_h_laser(space, params);
}

OperatorMatrix decay_operator(const HilbertSpace& space) {
  return space.transition_op(1, 3, 3) + space.transition_op(2, 3, 3);
}

OperatorMatrix dissipative_part(const OperatorMatrix& h) {
  return (h.adjoint() - h) * Complex(0.0, -0.5);
}

}  // namespace dissgate
