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


#include <doctest.h>

#include <cmath>
#include <limits>

#include "dissgate/errors.hpp"
#include "dissgate/stats.hpp"
#include "oracles.hpp"

using namespace dissgate;

TEST_SUITE("stats") {
  TEST_CASE("no-result probability") {
    CHECK(p_no_result(0.5, 1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p_no_result(1.0, 17, 1) == 0.0);
    CHECK(p_no_result(0.3, 4, 0) == 1.0);
    const double worked = p_no_result(0.95, 50, 50);
    CHECK(worked >= 0.015);
    CHECK(worked <= 0.020);
    CHECK(worked == doctest::Approx(std::pow(1.0 - std::pow(0.95, 50.0), 50.0)).epsilon(1e-12));
    CHECK_THROWS_AS(p_no_result(0.0, 1, 1), ConfigError);
    CHECK_THROWS_AS(p_no_result(1.1, 1, 1), ConfigError);
    CHECK_THROWS_AS(p_no_result(0.5, 0, 1), ConfigError);
  }

  TEST_CASE("tiny failure probabilities keep relative precision") {
    // 1 - (1 - 1e-12)^1 = 1e-12, lost entirely by naive 1 - pow.
    const double p = p_no_result(1.0 - 1e-12, 1, 3);
    CHECK(p == doctest::Approx(1e-36).epsilon(1e-3));
  }

  TEST_CASE("minimum repetitions match a direct scan") {
    CHECK(min_repeats(0.95, 50, 0.98) == oracle::min_repeats_scan(0.95, 50, 0.98));
    CHECK(min_repeats(0.95, 50, 0.98) <= 50);
    CHECK(min_repeats(0.9, 10, 0.99) == oracle::min_repeats_scan(0.9, 10, 0.99));
    CHECK(min_repeats(1.0, 1000, 0.999) == 1);
    for (double p0 : {0.5, 0.8, 0.99})
      for (std::uint64_t n : {1, 5, 20})
        for (double target : {0.5, 0.9, 0.999}) CHECK(min_repeats(p0, n, target) == oracle::min_repeats_scan(p0, n, target));
    CHECK_THROWS_AS(min_repeats(0.5, 1, 1.0), ConfigError);
    CHECK_THROWS_AS(min_repeats(0.01, 100000, 0.5), NumericalError);
  }

  TEST_CASE("exponential approximation") {
    CHECK(exponential_approx_error(0.7, 3, 0) == 0.0);
    const double exact = std::pow(1.0 - std::pow(0.95, 50.0), 50.0);
    const double approx = std::exp(-50.0 * std::pow(0.95, 50.0));
    const double err = exponential_approx_error(0.95, 50, 50);
    CHECK(err == doctest::Approx(std::abs(exact - approx) / exact).epsilon(1e-10));
    CHECK(err == doctest::Approx(0.1686).epsilon(1e-3));
    // M p0^N fixed at 1 while p0^N -> 0.
    double previous = std::numeric_limits<double>::infinity();
    for (std::uint64_t n : {10, 100, 1000, 4000}) {
      const double p0 = 0.99;
      const double success = std::pow(p0, double(n));
      const auto m = std::uint64_t(std::llround(1.0 / success));
      const double e = exponential_approx_error(p0, n, m);
      CHECK(e < previous);
      previous = e;
    }
    CHECK(previous < 1e-3);
  }

  TEST_CASE("campaign validation") {
    CampaignSpec c{0.95, 50, 50, 0.98};
    CHECK_NOTHROW(c.validate());
    c.m_runs = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
}
