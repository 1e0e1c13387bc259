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

namespace dissgate {

// Repeat-until-success bookkeeping for a computation of n_gates gates, each
// succeeding with probability p0, restarted up to m_runs times.
struct CampaignSpec {
  double p0 = 1.0;
  std::uint64_t n_gates = 1;
  std::uint64_t m_runs = 1;
  double target_success = 0.5;

  void validate() const;
};

// (1 - p0^N)^M, evaluated in the log domain.
double p_no_result(double p0, std::uint64_t n_gates, std::uint64_t m_runs);

// Smallest M with (1 - p0^N)^M <= 1 - target_success.
// Throws NumericalError when p0^N underflows (no finite M exists in practice).
std::uint64_t min_repeats(double p0, std::uint64_t n_gates, double target_success);

// |(1 - p0^N)^M - exp(-M p0^N)| / (1 - p0^N)^M. M = 0 gives 0.
double exponential_approx_error(double p0, std::uint64_t n_gates, std::uint64_t m_runs);

}  // namespace dissgate
