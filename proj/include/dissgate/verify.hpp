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

#include <string>
#include <vector>

#include "dissgate/config.hpp"

namespace dissgate {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Structural and numerical invariants of every module at the configured
// parameters: basis orthonormality, Hamiltonian structure, DFS inventory and
// projector algebra, propagator vs RK4, unraveling consistency, ideal
// effective gate, repeat-statistics monotonicity.
std::vector<CheckResult> run_invariant_suite(const RunConfig& config);

}  // namespace dissgate
