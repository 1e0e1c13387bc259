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

#include "dissgate/errors.hpp"
#include "dissgate/hilbert.hpp"
#include "oracles.hpp"

using namespace dissgate;

TEST_SUITE("hilbert") {
  TEST_CASE("dimension is 16 (n_max + 1)") {
    CHECK(HilbertSpace(2).dim() == 48);
    CHECK(HilbertSpace(1).dim() == 32);
    CHECK(HilbertSpace(5).dim() == 96);
    CHECK_THROWS_AS(HilbertSpace(0), ConfigError);
  }

  TEST_CASE("index ordering is frozen and bijective") {
    const HilbertSpace s(2);
    for (Index k = 0; k < s.dim(); ++k) CHECK(s.index(s.label(k)) == k);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int n = 0; n <= 2; ++n) CHECK(s.index(a, b, n) == oracle::index(2, a, b, n));
    CHECK(s.index(0, 0, 0) == 0);
    CHECK(to_string(s.label(oracle::index(2, 1, 2, 1))) == "|12>|1>");
    CHECK_THROWS(s.index(4, 0, 0));
    CHECK_THROWS(s.index(0, 0, 3));
    CHECK_THROWS(s.label(48));
  }

  TEST_CASE("basis states") {
    const HilbertSpace s(2);
    CHECK(s.basis_state(0, 0, 0) == oracle::ket(2, 0, 0, 0));
    CHECK(std::abs(s.basis_state(1, 2, 0).dot(s.basis_state(2, 1, 0))) == 0.0);
    for (Index k = 0; k < s.dim(); ++k) {
      const auto l = s.label(k);
      CHECK(s.basis_state(l.level1, l.level2, l.phonons).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("transition operators") {
    const HilbertSpace s(2);
    CHECK((s.transition_op(1, 1, 2) * s.basis_state(2, 0, 0) - s.basis_state(1, 0, 0)).norm() == 0.0);
    CHECK((s.transition_op(2, 1, 2) * s.basis_state(0, 2, 1) - s.basis_state(0, 1, 1)).norm() == 0.0);
    const OperatorMatrix p = s.transition_op(2, 3, 3);
    CHECK((p * p - p).norm() == 0.0);
    CHECK((s.transition_op(1, 1, 2).adjoint() - s.transition_op(1, 2, 1)).norm() == 0.0);
    CHECK_THROWS(s.transition_op(3, 0, 0));
  }

  TEST_CASE("phonon ladder with hard truncation") {
    const HilbertSpace s(2);
    const OperatorMatrix b = s.annihilation_op();
    CHECK((b * s.basis_state(0, 0, 1) - s.basis_state(0, 0, 0)).norm() == 0.0);
    CHECK((b * s.basis_state(0, 0, 0)).norm() == 0.0);
    CHECK((b * s.basis_state(3, 1, 2) - std::sqrt(2.0) * s.basis_state(3, 1, 1)).norm() < 1e-15);
    CHECK((s.creation_op() * s.basis_state(2, 2, 2)).norm() == 0.0);
    const OperatorMatrix num = s.creation_op() * b;
    for (int n = 0; n <= 2; ++n) {
      const StateVector k = s.basis_state(1, 3, n);
      CHECK(k.dot(num * k).real() == doctest::Approx(double(n)));
    }
    CHECK((s.number_op() - num).norm() < 1e-14);
  }

  TEST_CASE("phonon layer population") {
    const HilbertSpace s(2);
    const StateVector psi = (s.basis_state(0, 0, 2) + s.basis_state(1, 1, 0)) / std::sqrt(2.0);
    CHECK(phonon_layer_population(s, psi, 2) == doctest::Approx(0.5));
    CHECK(phonon_layer_population(s, psi, 1) == 0.0);
    CHECK((s.phonon_layer_projector(2) * psi).squaredNorm() == doctest::Approx(0.5));
  }
}
