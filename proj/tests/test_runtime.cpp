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

#include "doctest.h"
#include "qsum/errors.hpp"
#include "qsum/runtime.hpp"

using namespace qsum;

TEST_CASE("only the holder may act on a particle") {
  Registry reg(Dim(3));
  RngStream rng(1);
  auto [first, second] = reg.create_encoded_pair(2, {1, 1}, 1);
  CHECK(reg.holder(first) == 1);
  CHECK_THROWS_AS(reg.apply_shift(first, 1, 2), UsageError);
  CHECK_THROWS_AS(reg.measure_particle(second, 3, rng), UsageError);
  CHECK_THROWS_AS(reg.observe(first, kOutsider, rng), UsageError);
  reg.transfer(first, 1, kChannel);
  CHECK_THROWS_AS(reg.apply_shift(first, 1, 1), UsageError);
  CHECK_NOTHROW(reg.observe(first, kOutsider, rng));
  CHECK_THROWS_AS(reg.transfer(first, 1, 2), UsageError);
  reg.transfer(first, kChannel, 2);
  CHECK(reg.holder(first) == 2);
  CHECK_NOTHROW(reg.apply_shift(first, 1, 2));
}

TEST_CASE("consumed particles cannot be reused") {
  Registry reg(Dim(4));
  RngStream rng(2);
  auto [first, second] = reg.create_encoded_pair(1, {1, 1}, 1);
  const int a = reg.measure_particle(first, 1, rng);
  const int b = reg.measure_particle(second, 1, rng);
  CHECK(mod(a + b, 4) == 1);
  CHECK_FALSE(reg.is_live(first));
  CHECK_THROWS_AS(reg.measure_particle(first, 1, rng), UsageError);
  CHECK_THROWS_AS(reg.apply_shift(second, 1, 1), UsageError);
  CHECK(reg.consumed_count() == 2);
}

TEST_CASE("shifts are logged and move the Bell label") {
  Registry reg(Dim(5));
  RngStream rng(3);
  auto [first, second] = reg.create_encoded_pair(1, {2, 4}, 2);
  reg.apply_shift(first, 3, 2);
  reg.apply_shift(first, 4, 2);
  CHECK(reg.pair(first).shift_log.size() == 2);
  CHECK(reg.pair(first).origin.party == 2);
  CHECK(reg.pair(first).origin.position == 4);
  CHECK(reg.bell_check(first, second, 2, rng) == BellLabel{0, mod(1 + 3 + 4, 5)});
}

TEST_CASE("Bell check needs both slots of one pair and leaves them live") {
  Registry reg(Dim(3));
  RngStream rng(4);
  auto [a1, a2] = reg.create_encoded_pair(0, {1, 1}, 1);
  auto [b1, b2] = reg.create_encoded_pair(0, {1, 2}, 1);
  CHECK_THROWS_AS(reg.bell_check(a1, b2, 1, rng), UsageError);
  CHECK_THROWS_AS(reg.bell_check(a2, a1, 1, rng), UsageError);
  reg.transfer(a2, 1, 2);
  CHECK_THROWS_AS(reg.bell_check(a1, a2, 1, rng), UsageError);
  reg.transfer(a2, 2, 1);
  CHECK(reg.bell_check(a1, a2, 1, rng) == BellLabel{0, 0});
  CHECK(reg.is_live(a1));
  CHECK(reg.is_live(a2));
  CHECK(mod(reg.measure_particle(a1, 1, rng) + reg.measure_particle(a2, 1, rng), 3) == 0);
  (void)b1;
}

TEST_CASE("undisturbed decoys always verify") {
  Registry reg(Dim(4));
  RngStream rng(5);
  for (int k = 0; k < 200; ++k) {
    const ParticleRef ref = reg.create_decoy(rng, 1);
    reg.transfer(ref, 1, kChannel);
    reg.transfer(ref, kChannel, 2);
    CHECK(reg.verify_decoy(ref, 2, rng));
    CHECK_FALSE(reg.is_live(ref));
  }
}

TEST_CASE("particle count is conserved by transfers") {
  Registry reg(Dim(3));
  RngStream rng(6);
  auto [f, s] = reg.create_encoded_pair(1, {1, 1}, 1);
  const ParticleRef d = reg.create_decoy(rng, 1);
  CHECK(reg.particle_count() == 3);
  reg.transfer(f, 1, kChannel);
  reg.transfer(d, 1, kChannel);
  CHECK(reg.particle_count() == 3);
  CHECK(describe(d).find("decoy") != std::string::npos);
  (void)s;
}
