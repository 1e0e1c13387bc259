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

#include "dissgate/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dissgate/errors.hpp"

namespace dissgate {
namespace {

void check_p0(double p0) {
  if (!(p0 > 0.0 && p0 <= 1.0)) throw ConfigError("p0", "must lie in (0, 1]");
}

void check_gates(std::uint64_t n_gates) {
  if (n_gates < 1) throw ConfigError("n_gates", "must be >= 1");
}

// log(1 - p0^N), -inf when p0 = 1.
double log_failure(double p0, std::uint64_t n_gates) {
  const double log_success = static_cast<double>(n_gates) * std::log(p0);
  return std::log1p(-std::exp(log_success));
}

}  // namespace

void CampaignSpec::validate() const {
  check_p0(p0);
  check_gates(n_gates);
  if (m_runs < 1) throw ConfigError("m_runs", "must be >= 1");
  if (!(target_success > 0.0 && target_success < 1.0)) throw ConfigError("target_success", "must lie in (0, 1)");
}

double p_no_result(double p0, std::uint64_t n_gates, std::uint64_t m_runs) {
  check_p0(p0);
  check_gates(n_gates);
  if (m_runs == 0) return 1.0;
  if (p0 == 1.0) return 0.0;
  return std::exp(static_cast<double>(m_runs) * log_failure(p0, n_gates));
}

std::uint64_t min_repeats(double p0, std::uint64_t n_gates, double target_success) {
  check_p0(p0);
  check_gates(n_gates);
  if (!(target_success > 0.0 && target_success < 1.0)) throw ConfigError("target_success", "must lie in (0, 1)");
  if (p0 == 1.0) return 1;
  const double lf = log_failure(p0, n_gates);
  if (lf == 0.0) {
    throw NumericalError("min_repeats infeasible: p0^N = " + std::to_string(std::pow(p0, n_gates)) +
                         " underflows");
  }
  const double ratio = std::log1p(-target_success) / lf;
  if (!(ratio < 1e18)) throw NumericalError("min_repeats infeasible: required repetitions exceed 1e18");
  auto m = static_cast<std::uint64_t>(std::max(1.0, std::ceil(ratio)));
  // ceil() of a rounded ratio can land one off; settle against the exact criterion.
  const double allowed = 1.0 - target_success;
  while (m > 1 && p_no_result(p0, n_gates, m - 1) <= allowed) --m;
  while (p_no_result(p0, n_gates, m) > allowed) ++m;
  return m;
}

double exponential_approx_error(double p0, std::uint64_t n_gates, std::uint64_t m_runs) {
  check_p0(p0);
  check_gates(n_gates);
  if (m_runs == 0) return 0.0;
  const double exact = p_no_result(p0, n_gates, m_runs);
  const double success = std::exp(static_cast<double>(n_gates) * std::log(p0));
  const double approx = std::exp(-static_cast<double>(m_runs) * success);
  if (exact == 0.0) return approx == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(exact - approx) / exact;
}

}  // namespace dissgate
