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
#include <string>
#include <vector>

#include "doctest.h"
#include "qsum/adversary.hpp"
#include "qsum/errors.hpp"
#include "qsum/inference.hpp"
#include "qsum/leakage.hpp"
#include "qsum/protocol_math.hpp"
#include "test_support.hpp"

using namespace qsum;
using namespace qsum::testing;

TEST_CASE("two colluders recover the target on Wu's protocol") {
  InputMatrix x{{1}, {2}, {0}, {1}};
  auto s = strategy_collusive_two(1);
  const RunOutcome r = run_wu(4, 1, x, *s, 42);
  REQUIRE(r.guess);
  CHECK(r.guess->coalition == std::vector<int>{1, 3});
  CHECK(r.guess->target == 2);
  CHECK(r.guess->guess == std::vector<int>{2});
  CHECK_FALSE(r.detected);
  CHECK(*r.sum == column_sums(x, 3));
  const AttackOutcome a = evaluate_attack(r, x[1]);
  CHECK(a.success);
  CHECK_FALSE(a.detected);
  CHECK_FALSE(events_of(r.transcript, EventKind::collusion).empty());

  RngStream rng(200);
  for (int n = 4; n <= 6; ++n)
    for (int i = 1; i <= n; ++i)
      for (int trial = 0; trial < 20; ++trial) {
        const InputMatrix y = random_inputs(n, 3, n - 1, rng);
        auto c = strategy_collusive_two(i);
        const RunOutcome run = run_wu(n, 3, y, *c, static_cast<std::uint64_t>(trial));
        CHECK(evaluate_attack(run, y[static_cast<std::size_t>(ring_add(i, 1, n) - 1)]).success);
        CHECK_FALSE(run.detected);
      }

  auto bad = strategy_collusive_two(1);
  CHECK_THROWS_AS(run_wu(3, 1, InputMatrix(3, {0}), *bad, 1), ConfigError);
}

TEST_CASE("four colluders recover the target by classical post-processing") {
  RngStream rng(201);
  const InputMatrix x = random_inputs(6, 1, 5, rng);
  auto s = strategy_collusive_four(1);
  const RunOutcome r = run_wu(6, 1, x, *s, 77);
  REQUIRE(r.guess);
  std::vector<int> members = r.guess->coalition;
  std::sort(members.begin(), members.end());
  CHECK(members == std::vector<int>{1, 2, 4, 5});
  CHECK(r.guess->target == 3);
  CHECK(evaluate_attack(r, x[2]).success);
  CHECK_FALSE(r.detected);

  auto h = strategy_honest();
  const RunOutcome base = run_wu(6, 1, x, *h, 77);
  const auto quantum = [](const RunOutcome& o) {
    std::vector<Event> out;
    for (const Event& e : o.transcript.events())
      if (is_quantum(e.kind)) out.push_back(e);
    return out;
  };
  CHECK(quantum(r) == quantum(base));
  CHECK(r.published == base.published);

  for (int n = 6; n <= 7; ++n)
    for (int i = 1; i <= n; ++i) {
      const InputMatrix y = random_inputs(n, 2, n - 1, rng);
      auto c = strategy_collusive_four(i);
      CHECK(evaluate_attack(run_wu(n, 2, y, *c, 5), y[static_cast<std::size_t>(ring_add(i, 2, n) - 1)]).success);
    }

  auto bad = strategy_collusive_four(1);
  CHECK_THROWS_AS(run_wu(5, 1, InputMatrix(5, {0}), *bad, 1), ConfigError);
}

TEST_CASE("measuring one in-flight particle") {
  auto bad = strategy_measure_one_position(2, 9, 0);
  CHECK_THROWS_AS(run_improved45(4, 4, 2, InputMatrix(4, std::vector<int>(4, 0)), *bad, 1), DomainError);
  auto wrong_protocol = strategy_measure_one_position(2, 1, 0);
  CHECK_THROWS_AS(run_wu(4, 1, InputMatrix(4, {0}), *wrong_protocol, 1), ConfigError);

  // The collapsed value is the origin's raw first share plus every shift
  // applied before the attacker held it.
  RngStream rng(202);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 6, d = 5, origin = 1, attacker = 3, position = 2;
    const InputMatrix x = random_inputs(n, 2, d, rng);
    auto s = strategy_measure_one_position(attacker, position, origin);
    const RunOutcome r = run_improved_multi(n, 2, 1, x, *s, static_cast<std::uint64_t>(trial));
    const Event* seen = find_event(r.transcript, EventKind::observe, attacker, origin);
    REQUIRE(seen);
    CHECK(seen->values[0] == position);
    if (r.aborted()) continue;
    const Event* pos = find_event(r.transcript, EventKind::positions, origin, 0);
    if (std::find(pos->values.begin(), pos->values.end(), position) != pos->values.end()) continue;
    const Event* prep = find_event(r.transcript, EventKind::prepare, origin, origin);
    const Event* second = find_event(r.transcript, EventKind::measure, origin, origin, 2);
    std::size_t idx = 0;
    for (int k = 1; k < position; ++k)
      if (std::find(pos->values.begin(), pos->values.end(), k) == pos->values.end()) ++idx;
    const int s1 = mod(prep->values[position - 1] - second->values[idx], d);
    int upstream = 0;
    for (const Event* e : events_of(r.transcript, EventKind::shift))
      if (e->peer == origin && e->author != attacker && e->tag < 2) upstream += e->values[position - 1];
    CHECK(seen->values[1] == mod(s1 + upstream, d));
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("outsider on an undisturbed run") {
  auto s = strategy_honest();
  int aborted = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    aborted += run_improved3(8, InputMatrix(3, std::vector<int>(8, 1)), *s, seed).aborted();
  CHECK(aborted == 0);
  auto out = strategy_intercept_resend();
  const RunOutcome r = run_improved3(8, InputMatrix(3, std::vector<int>(8, 1)), *out, 3);
  CHECK(r.detected);
  CHECK(r.aborted());
  CHECK(r.abort_reason.find("decoy") != std::string::npos);
}

TEST_CASE("evaluate_attack") {
  RunOutcome r;
  CHECK_THROWS_AS(evaluate_attack(r, {1}), UsageError);
  r.guess = AttackGuess{{1, 3}, 2, {1, 2, 0}};
  r.detected = true;
  AttackOutcome a = evaluate_attack(r, {1, 2, 0});
  CHECK(a.success);
  CHECK(a.detected);
  CHECK(a.coalition == std::vector<int>{1, 3});
  a = evaluate_attack(r, {1, 2, 1});
  CHECK_FALSE(a.success);
}

TEST_CASE("strategy specs") {
  StrategySpec spec{"coalition", {{"target", "2"}, {"measure", "own"}}};
  CHECK(make_strategy(spec, 5)->name() == "coalition");
  CHECK_THROWS_AS(make_strategy(StrategySpec{"coalition", {{"bogus", "1"}}}, 5), ConfigError);
  CHECK_THROWS_AS(make_strategy(StrategySpec{"collusive_two", {{"i", "9"}}}, 5), ConfigError);
  CHECK_THROWS_AS(make_strategy(StrategySpec{"nope", {}}, 5), ConfigError);
  CHECK_THROWS_AS(make_strategy(StrategySpec{"coalition", {{"measure", "some"}}}, 5), ConfigError);
  auto ir = make_strategy(StrategySpec{"intercept_resend", {{"senders", "1, 2"}}}, 5);
  CHECK(ir->has_outsider());
}

TEST_CASE("modular system") {
  ModularSystem sys(3, 5);
  sys.add({{0, 1}, {1, 1}}, 3);
  CHECK_FALSE(sys.evaluate({{0, 1}}));
  CHECK(sys.evaluate({{0, 1}, {1, 1}}) == 3);
  CHECK(sys.evaluate({{0, 2}, {1, 2}}) == 1);
  sys.add({{1, 1}}, 1);
  CHECK(sys.evaluate({{0, 1}}) == 2);
  CHECK_FALSE(sys.evaluate({{2, 1}}));
  CHECK(sys.inconsistencies() == 0);
  sys.add({{0, 1}}, 4);
  CHECK(sys.inconsistencies() == 1);

  // 2x = 2 over Z_4 leaves x in {1, 3}.
  ModularSystem ring(1, 4);
  ring.add({{0, 2}}, 2);
  CHECK_FALSE(ring.evaluate({{0, 1}}));
}

namespace {

// Runs the solver for a fixed coalition without disturbing anything.
class PassiveAudit final : public Strategy {
 public:
  PassiveAudit(int target, std::vector<int> members) : target_(target), members_(std::move(members)) {}
  std::string name() const override { return "passive_audit"; }
  std::vector<int> coalition() const override { return members_; }
  void on_finish(FinishContext& ctx) override { report = infer_inputs(ctx, members_, target_, {}); }

  InferenceReport report;

 private:
  int target_;
  std::vector<int> members_;
};

}  // namespace

TEST_CASE("solver claims only true values") {
  RngStream rng(203);
  int determined = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const InputMatrix x = random_inputs(5, 2, 4, rng);
    // All but the target: the target's input is the sum minus theirs.
    PassiveAudit all(3, {1, 2, 4, 5});
    run_wu(5, 2, x, all, static_cast<std::uint64_t>(trial));
    for (std::size_t j = 0; j < 2; ++j) {
      REQUIRE(all.report.coordinates[j]);
      CHECK(*all.report.coordinates[j] == x[2][j]);
    }
    CHECK(all.report.inconsistencies == 0);

    PassiveAudit partial(1, {2, 4});
    run_improved45(5, 2, 1, x, partial, static_cast<std::uint64_t>(trial));
    for (std::size_t j = 0; j < 2; ++j)
      if (partial.report.coordinates[j]) {
        ++determined;
        CHECK(*partial.report.coordinates[j] == x[0][j]);
      }
    CHECK(partial.report.inconsistencies == 0);
  }
  CHECK(determined == 0);
}

TEST_CASE("three-party leakage audit") {
  const LeakageReport rep = leakage_audit_improved3(256, 7);
  CHECK(rep.passed());
  CHECK(rep.rows.size() == 32);
  for (const LeakageRow& row : rep.rows) {
    CHECK(row.matches);
    const auto half = Rational(1, 2);
    if (row.sum13 == 1) {
      CHECK(row.posterior.at({0, 1}) == half);
      CHECK(row.posterior.at({1, 0}) == half);
    } else {
      CHECK(row.posterior.at({0, 0}) == half);
      CHECK(row.posterior.at({1, 1}) == half);
    }
    for (const auto& [pair, w] : row.posterior) CHECK(w != Rational(1));
  }
}
