// Copyright 2026 The qsum Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "qsum/errors.hpp"
#include "qsum/qudit.hpp"

using namespace qsum;

namespace {

// Textbook amplitude of |phi(u,v)> at |j1>|j2>, written out independently of
// make_bell.
Complex bell_amplitude(int d, int u, int v, int j1, int j2) {
  if (mod(j1 + j2, d) != v) return 0.0;
  const double angle = 2.0 * std::numbers::pi * j1 * u / d;
  return std::polar(1.0 / std::sqrt(static_cast<double>(d)), angle);
}

}  // namespace

TEST_CASE("dimension and modular helpers") {
  CHECK_THROWS_AS(Dim(1), DomainError);
  CHECK_THROWS_AS(Dim(0), DomainError);
  CHECK(mod(-1, 3) == 2);
  CHECK(mod(7, 3) == 1);
  CHECK(std::abs(root_of_unity(4, 1) - Complex(0, 1)) < 1e-12);
}

TEST_CASE("Bell states match the closed form") {
  for (int d = 2; d <= 5; ++d)
    for (int u = 0; u < d; ++u)
      for (int v = 0; v < d; ++v) {
        const PairState p = make_bell(Dim(d), u, v);
        for (int j1 = 0; j1 < d; ++j1)
          for (int j2 = 0; j2 < d; ++j2) CHECK(std::abs(p.at(j1, j2) - bell_amplitude(d, u, v, j1, j2)) < 1e-12);
      }
  CHECK_THROWS_AS(make_bell(Dim(3), 3, 0), DomainError);
}

TEST_CASE("Bell basis is orthonormal for d = 2..8") {
  for (int d = 2; d <= 8; ++d)
    for (int a = 0; a < d * d; ++a)
      for (int b = 0; b < d * d; ++b) {
        const Complex ip = inner_product(make_bell(Dim(d), a / d, a % d), make_bell(Dim(d), b / d, b % d));
        CHECK(std::abs(ip - Complex(a == b ? 1.0 : 0.0)) < 1e-10);
      }
}

TEST_CASE("shift and Fourier operators") {
  for (int d = 2; d <= 8; ++d) {
    CHECK(unitarity_error(fourier_op(Dim(d))) < 1e-10);
    for (int k = 0; k < d; ++k) {
      const UnitaryOp s = shift_op(Dim(d), k);
      CHECK(unitarity_error(s) < 1e-10);
      for (int j = 0; j < d; ++j) CHECK(std::abs(apply(s, basis_state(Dim(d), j)).amps[static_cast<std::size_t>(mod(j + k, d))] - 1.0) < 1e-12);
    }
    const UnitaryOp f = fourier_op(Dim(d));
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        CHECK(std::abs(f.at(j, k) - root_of_unity(d, static_cast<long long>(j) * k) / std::sqrt(static_cast<double>(d))) < 1e-12);
  }
}

TEST_CASE("shift covariance on either particle") {
  for (int d = 2; d <= 5; ++d)
    for (int u = 0; u < d; ++u)
      for (int v = 0; v < d; ++v)
        for (int k = 0; k < d; ++k) {
          const PairState expect = make_bell(Dim(d), u, mod(v + k, d));
          CHECK(equal_up_to_global_phase(apply_to_slot(make_bell(Dim(d), u, v), 1, shift_op(Dim(d), k)), expect));
          CHECK(equal_up_to_global_phase(apply_to_slot(make_bell(Dim(d), u, v), 2, shift_op(Dim(d), k)), expect));
        }
  CHECK_FALSE(equal_up_to_global_phase(make_bell(Dim(3), 0, 0), make_bell(Dim(3), 1, 0)));
  CHECK_THROWS_AS(apply_to_slot(make_bell(Dim(3), 0, 0), 3, shift_op(Dim(3), 1)), DomainError);
  CHECK_THROWS_AS(apply_to_slot(make_bell(Dim(3), 0, 0), 1, shift_op(Dim(4), 1)), DomainError);
}

TEST_CASE("computational outcomes of an encoded pair add up to v") {
  for (int d = 2; d <= 6; ++d)
    for (int v = 0; v < d; ++v) {
      const PairState p = make_bell(Dim(d), 0, v);
      const auto first = slot_probabilities(p, 1);
      for (double q : first) CHECK(q == doctest::Approx(1.0 / d).epsilon(1e-12));
      RngStream rng(static_cast<std::uint64_t>(d * 31 + v));
      for (int trial = 0; trial < 50; ++trial) {
        const SlotMeasurement m = measure_slot_computational(p, 1, rng);
        const auto rest = single_probabilities(m.residual, Basis::computational);
        CHECK(rest[static_cast<std::size_t>(mod(v - m.outcome, d))] == doctest::Approx(1.0));
      }
    }
}

TEST_CASE("Bell measurement of a Bell state is deterministic") {
  RngStream rng(3);
  for (int d = 2; d <= 5; ++d)
    for (int u = 0; u < d; ++u)
      for (int v = 0; v < d; ++v) CHECK(measure_bell(make_bell(Dim(d), u, v), rng) == BellLabel{u, v});
}

TEST_CASE("measuring one particle keeps v and spreads u uniformly") {
  const int d = 3;
  PairState p = make_bell(Dim(d), 0, 2);
  RngStream rng(9);
  collapse_slot_computational(p, 1, rng);
  const auto probs = bell_probabilities(p);
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v)
      CHECK(probs[static_cast<std::size_t>(u * d + v)] == doctest::Approx(v == 2 ? 1.0 / d : 0.0).epsilon(1e-12));
}

TEST_CASE("decoy survives a computational measure-and-resend with probability (d+1)/2d") {
  for (int d = 2; d <= 6; ++d) {
    double pass = 0.0;
    for (int r = 0; r < d; ++r) {
      pass += 1.0;  // computational decoy is undisturbed
      // Fourier decoy collapses to |j> with prob 1/d, then reads r in the
      // Fourier basis with prob 1/d.
      const auto collapse = single_probabilities(fourier_state(Dim(d), r), Basis::computational);
      for (int j = 0; j < d; ++j)
        pass += collapse[static_cast<std::size_t>(j)] *
                single_probabilities(basis_state(Dim(d), j), Basis::fourier)[static_cast<std::size_t>(r)];
    }
    CHECK(pass / (2.0 * d) == doctest::Approx((d + 1.0) / (2.0 * d)).epsilon(1e-12));
  }
}
