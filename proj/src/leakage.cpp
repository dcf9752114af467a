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

#include "qsum/leakage.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qsum/protocol_math.hpp"
#include "qsum/protocols.hpp"
#include "qsum/qudit.hpp"

namespace qsum {

namespace {

constexpr int kD = 2;

/// Born probability of reading s1 on the first particle of |phi(0, x)>,
/// lifted to an exact rational with denominator d.
Rational first_outcome_weight(int x, int s1) {
  const PairState pair = make_bell(Dim(kD), 0, x);
  const double p = slot_probabilities(pair, 1)[static_cast<std::size_t>(s1)];
  const long long num = std::llround(p * kD);
  if (std::abs(p - static_cast<double>(num) / kD) > 1e-12)
    throw std::logic_error("leakage audit: Born weight is not a multiple of 1/d");
  return Rational(num, kD);
}

LeakageView view_of(int x2, int s1_2, int s2_2, int s1_1, int p1, int p2, int p3) {
  return {x2, s1_2, s2_2, s1_1, p1, p2, p3};
}

/// A_2 measures its own first particles before sending them.
class CuriousSecond final : public Strategy {
 public:
  std::string name() const override { return "curious_second"; }
  std::vector<int> coalition() const override { return {2}; }
  void bind(const ProtocolInfo&) override { s1_.clear(); }
  void on_prepare(PartyContext& ctx) override {
    for (const ParticleRef& ref : ctx.record().first) s1_.push_back(ctx.observe(ref));
  }
  bool verifies_own_checks(int) const override { return false; }
  void on_finish(FinishContext& ctx) override {
    const PartyRecord& me = ctx.party(2);
    view_ = view_of(me.x[0], s1_.at(0), me.s2[0], me.measured[0], ctx.published(1)[0],
                    ctx.published(2)[0], ctx.published(3)[0]);
  }
  const LeakageView& view() const { return view_; }

 private:
  std::vector<int> s1_;
  LeakageView view_{};
};

}  // namespace

std::string LeakageReport::summary() const {
  std::ostringstream out;
  out << rows.size() << " views, " << mismatched_views << " posterior mismatches, "
      << concentrated_views << " concentrated posteriors; " << engine_runs << " engine runs, "
      << engine_views_outside_support << " outside support, " << engine_sum_errors
      << " wrong sums";
  return out.str();
}

LeakageReport leakage_audit_improved3(int engine_runs, std::uint64_t seed) {
  // joint[view][(x1, x3)] = Pr[view, x1, x3] with uniform independent inputs.
  std::map<LeakageView, std::map<std::pair<int, int>, Rational>> joint;
  const Rational input_weight(1, kD * kD * kD);

  for (int x1 = 0; x1 < kD; ++x1)
    for (int x2 = 0; x2 < kD; ++x2)
      for (int x3 = 0; x3 < kD; ++x3)
        for (int a1 = 0; a1 < kD; ++a1)
          for (int a2 = 0; a2 < kD; ++a2)
            for (int a3 = 0; a3 < kD; ++a3) {
              const Rational w = input_weight * first_outcome_weight(x1, a1) *
                                 first_outcome_weight(x2, a2) * first_outcome_weight(x3, a3);
              if (w == Rational(0)) continue;
              const int b1 = mod(x1 - a1, kD), b2 = mod(x2 - a2, kD), b3 = mod(x3 - a3, kD);
              // A_q measures the sequence of A_{q-1}: P_q = s1^{q-1} + s2^q.
              const int p1 = mod(a3 + b1, kD), p2 = mod(a1 + b2, kD), p3 = mod(a2 + b3, kD);
              joint[view_of(x2, a2, b2, a1, p1, p2, p3)][{x1, x3}] += w;
            }

  LeakageReport report;
  for (const auto& [view, dist] : joint) {
    LeakageRow row;
    row.view = view;
    Rational total(0);
    for (const auto& [pair, w] : dist) total += w;
    for (const auto& [pair, w] : dist) row.posterior[pair] = w / total;

    // Ideal functionality: A_2 learns x2 and the sum, hence x1 + x3; the
    // inputs are uniform so the posterior is uniform on the consistent pairs.
    row.sum13 = mod(view[4] + view[5] + view[6] - view[0], kD);
    for (int x1 = 0; x1 < kD; ++x1) row.ideal[{x1, mod(row.sum13 - x1, kD)}] = Rational(1, kD);

    row.matches = row.posterior == row.ideal;
    if (!row.matches) ++report.mismatched_views;
    for (const auto& [pair, p] : row.posterior)
      if (p == Rational(1)) ++report.concentrated_views;
    report.rows.push_back(std::move(row));
  }

  RngStream inputs(derive_seed(seed, 0x1eaca9e));
  for (int k = 0; k < engine_runs; ++k) {
    InputMatrix x{{inputs.uniform_int(kD)}, {inputs.uniform_int(kD)}, {inputs.uniform_int(kD)}};
    CuriousSecond spy;
    const RunOutcome run = run_improved3(1, x, spy, derive_seed(seed, static_cast<std::uint64_t>(k)));
    ++report.engine_runs;
    if (!run.sum || *run.sum != expected_sum(x, kD)) ++report.engine_sum_errors;
    const auto it = joint.find(spy.view());
    if (it == joint.end() || !it->second.contains({x[0][0], x[2][0]}))
      ++report.engine_views_outside_support;
  }
  return report;
}

}  // namespace qsum
