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

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "qsum/adversary.hpp"
#include "qsum/errors.hpp"
#include "qsum/protocol_math.hpp"
#include "qsum/protocols.hpp"
#include "test_support.hpp"

using namespace qsum;
using namespace qsum::testing;

namespace {

RunOutcome honest(Protocol p, int n, int m, int t, const InputMatrix& x, std::uint64_t seed,
                  const RunOptions& opts = {}) {
  auto s = strategy_honest();
  return run_protocol(p, n, m, t, x, *s, seed, opts);
}

}  // namespace

TEST_CASE("Wu protocol, four parties") {
  RngStream rng(100);
  for (int trial = 0; trial < 200; ++trial) {
    const InputMatrix x = random_inputs(4, 3, 3, rng);
    const RunOutcome r = honest(Protocol::wu, 4, 3, 0, x, 1000 + trial);
    REQUIRE_FALSE(r.aborted());
    CHECK_FALSE(r.detected);
    CHECK(*r.sum == column_sums(x, 3));
    CHECK(events_of(r.transcript, EventKind::collusion).empty());
  }
  const InputMatrix zeros(4, std::vector<int>(3, 0));
  CHECK(*honest(Protocol::wu, 4, 3, 0, zeros, 5).sum == std::vector<int>{0, 0, 0});
}

TEST_CASE("published vectors of an honest Wu run add up to the sum") {
  RngStream rng(101);
  const InputMatrix x = random_inputs(4, 2, 3, rng);
  const RunOutcome r = honest(Protocol::wu, 4, 2, 0, x, 7);
  std::vector<int> acc(2, 0);
  for (const Event* e : events_of(r.transcript, EventKind::publish))
    for (std::size_t j = 0; j < 2; ++j) acc[j] = (acc[j] + e->values[j]) % 3;
  CHECK(acc == column_sums(x, 3));
}

TEST_CASE("three-party protocol") {
  const InputMatrix ones(3, std::vector<int>{1});
  CHECK(*honest(Protocol::improved3, 3, 1, 0, ones, 1).sum == std::vector<int>{1});
  for (int code = 0; code < 8; ++code) {
    InputMatrix x{{code & 1}, {(code >> 1) & 1}, {(code >> 2) & 1}};
    for (std::uint64_t seed = 0; seed < 8; ++seed) CHECK(*honest(Protocol::improved3, 3, 1, 0, x, seed).sum == column_sums(x, 2));
  }
  RngStream rng(102);
  const InputMatrix x = random_inputs(3, 2, 2, rng);
  CHECK(*honest(Protocol::improved3, 3, 2, 0, x, 3).sum == column_sums(x, 2));
}

TEST_CASE("four and five party protocol") {
  RngStream rng(103);
  for (int n : {4, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      const InputMatrix x = random_inputs(n, 4, n - 1, rng);
      const RunOutcome r = honest(Protocol::improved45, n, 4, 2, x, 2000 + trial);
      REQUIRE_FALSE(r.aborted());
      CHECK(*r.sum == column_sums(x, n - 1));
      CHECK(r.checks.bell_checks == n * 2);
      CHECK(r.checks.bell_mismatches == 0);
      for (const auto& p : r.published) CHECK(p.size() == 8);
    }
  }
  const InputMatrix zeros(5, std::vector<int>(2, 0));
  CHECK(*honest(Protocol::improved45, 5, 2, 1, zeros, 9).sum == std::vector<int>{0, 0});
}

TEST_CASE("multi-party protocol") {
  RngStream rng(104);
  for (int n = 6; n <= 8; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const InputMatrix x = random_inputs(n, 2, n - 1, rng);
      const RunOutcome r = honest(Protocol::improved_multi, n, 2, 1, x, 3000 + trial);
      REQUIRE_FALSE(r.aborted());
      CHECK(*r.sum == column_sums(x, n - 1));
    }
  }
  const InputMatrix zeros(7, std::vector<int>(2, 0));
  CHECK(*honest(Protocol::improved_multi, 7, 2, 1, zeros, 9).sum == std::vector<int>{0, 0});
}

TEST_CASE("with zero masks the final hop measures the raw first shares") {
  RngStream rng(105);
  RunOptions opts;
  opts.zero_masks = true;
  for (int trial = 0; trial < 20; ++trial) {
    const InputMatrix x = random_inputs(6, 2, 5, rng);
    const RunOutcome r = honest(Protocol::improved_multi, 6, 2, 1, x, 4000 + trial, opts);
    REQUIRE_FALSE(r.aborted());
    CHECK(*r.sum == column_sums(x, 5));
    for (const Event* e : events_of(r.transcript, EventKind::shift))
      for (int k : e->values) CHECK(k == 0);
    for (int origin = 1; origin <= 6; ++origin) {
      // The measurer reads s1 = payload - s2 at every unchecked position.
      const int measurer = ring_step(origin, 3, 6);
      const Event* prep = find_event(r.transcript, EventKind::prepare, origin, origin);
      const Event* first = find_event(r.transcript, EventKind::measure, measurer, origin, 1);
      const Event* second = find_event(r.transcript, EventKind::measure, origin, origin, 2);
      const Event* pos = find_event(r.transcript, EventKind::positions, origin, 0);
      REQUIRE(prep);
      REQUIRE(first);
      REQUIRE(second);
      REQUIRE(pos);
      std::size_t next = 0;
      for (int k = 1; k <= 4; ++k) {
        if (std::find(pos->values.begin(), pos->values.end(), k) != pos->values.end()) continue;
        const int s2 = second->values[next++];
        CHECK(first->values[static_cast<std::size_t>(k - 1)] == mod(prep->values[static_cast<std::size_t>(k - 1)] - s2, 5));
      }
    }
  }
}

TEST_CASE("every Bell check in an honest run returns the label implied by the logged shifts") {
  RngStream rng(106);
  for (auto [p, n] : {std::pair{Protocol::improved45, 4}, {Protocol::improved45, 5}, {Protocol::improved_multi, 6},
                      {Protocol::improved_multi, 7}}) {
    const int d = n - 1;
    const InputMatrix x = random_inputs(n, 3, d, rng);
    const RunOutcome r = honest(p, n, 3, 2, x, 17);
    REQUIRE_FALSE(r.aborted());
    for (int origin = 1; origin <= n; ++origin) {
      const Event* prep = find_event(r.transcript, EventKind::prepare, origin, origin);
      const Event* pos = find_event(r.transcript, EventKind::positions, origin, 0);
      const Event* bell = nullptr;
      for (const Event* e : events_of(r.transcript, EventKind::bell_measure))
        if (e->peer == origin) bell = e;
      REQUIRE(bell);
      for (std::size_t j = 0; j < pos->values.size(); ++j) {
        const auto k = static_cast<std::size_t>(pos->values[j] - 1);
        long long v = prep->values[k];
        for (const Event* e : events_of(r.transcript, EventKind::shift))
          if (e->peer == origin) v += e->values[k];
        CHECK(bell->values[2 * j] == 0);
        CHECK(bell->values[2 * j + 1] == mod(v, d));
      }
    }
  }
}

TEST_CASE("transcripts are deterministic in the seed") {
  RngStream rng(107);
  const InputMatrix x = random_inputs(6, 3, 5, rng);
  const RunOutcome a = honest(Protocol::improved_multi, 6, 3, 2, x, 99);
  const RunOutcome b = honest(Protocol::improved_multi, 6, 3, 2, x, 99);
  const RunOutcome c = honest(Protocol::improved_multi, 6, 3, 2, x, 100);
  CHECK(a.transcript.to_jsonl() == b.transcript.to_jsonl());
  CHECK(a.transcript.to_jsonl() != c.transcript.to_jsonl());
  CHECK(a.transcript.to_jsonl().rfind("{\"run_id\":\"run\",\"step\":", 0) == 0);
}

namespace {

// Keeps refs to a relayed sequence and touches them after they have moved on.
class StaleTouch final : public Strategy {
 public:
  std::string name() const override { return "stale_touch"; }
  std::vector<int> coalition() const override { return {1}; }
  void on_receive_sequence(PartyContext&, const SequenceArrival& a) override {
    if (a.origin != 1) kept_ = a.particles;
  }
  void on_publish(PartyContext& ctx, std::vector<int>&) override { ctx.observe(kept_.front()); }

 private:
  std::vector<ParticleRef> kept_;
};

}  // namespace

TEST_CASE("strategies cannot touch particles they do not hold") {
  StaleTouch s;
  const InputMatrix x(4, std::vector<int>{1});
  CHECK_THROWS_AS(run_wu(4, 1, x, s, 1), UsageError);
  CHECK_THROWS_AS(run_improved45(4, 1, 1, x, s, 1), UsageError);
}

TEST_CASE("shape and input validation") {
  auto s = strategy_honest();
  CHECK_THROWS_AS(run_wu(2, 1, InputMatrix(2, {0}), *s, 1), ConfigError);
  CHECK_THROWS_AS(run_improved45(6, 1, 1, InputMatrix(6, {0}), *s, 1), ConfigError);
  CHECK_THROWS_AS(run_improved_multi(5, 1, 1, InputMatrix(5, {0}), *s, 1), ConfigError);
  CHECK_THROWS_AS(run_improved45(4, 2, 3, InputMatrix(4, {0, 0}), *s, 1), ConfigError);
  CHECK_THROWS_AS(run_wu(4, 1, InputMatrix(3, {0}), *s, 1), DomainError);
  CHECK_THROWS_AS(run_wu(4, 2, InputMatrix(4, {0}), *s, 1), DomainError);
  CHECK_THROWS_AS(run_wu(4, 1, InputMatrix(4, {3}), *s, 1), DomainError);
  try {
    run_improved45(6, 1, 1, InputMatrix(6, {0}), *s, 1);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("n ∈ {4,5}") != std::string::npos);
  }
  RunOptions opts;
  opts.d = 7;
  RngStream rng(108);
  const InputMatrix x = random_inputs(4, 2, 7, rng);
  CHECK(*run_wu(4, 2, x, *s, 3, opts).sum == column_sums(x, 7));
}
