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
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qsum/adversary.hpp"
#include "qsum/harness.hpp"
#include "qsum/leakage.hpp"
#include "qsum/protocol_math.hpp"
#include "qsum/qudit.hpp"

namespace qsum {

namespace {

using Check = std::function<std::string()>;  // empty string = pass

std::string bell_algebra() {
  for (int dv = 2; dv <= 8; ++dv) {
    const Dim d(dv);
    for (int a = 0; a < dv * dv; ++a)
      for (int b = 0; b < dv * dv; ++b) {
        const Complex ip = inner_product(make_bell(d, a / dv, a % dv), make_bell(d, b / dv, b % dv));
        if (std::abs(ip - Complex(a == b ? 1.0 : 0.0)) > 1e-10)
          return "Bell basis not orthonormal at d=" + std::to_string(dv);
      }
    if (unitarity_error(fourier_op(d)) > 1e-10) return "F not unitary at d=" + std::to_string(dv);
    for (int k = 0; k < dv; ++k)
      if (unitarity_error(shift_op(d, k)) > 1e-10) return "QS not unitary at d=" + std::to_string(dv);
  }
  for (int dv = 2; dv <= 5; ++dv) {
    const Dim d(dv);
    for (int u = 0; u < dv; ++u)
      for (int v = 0; v < dv; ++v)
        for (int k = 0; k < dv; ++k)
          if (!equal_up_to_global_phase(apply_to_slot(make_bell(d, u, v), 1, shift_op(d, k)),
                                        make_bell(d, u, mod(v + k, dv))))
            return "shift covariance fails at d=" + std::to_string(dv);
  }
  return {};
}

std::string telescoping() {
  struct Shape { Protocol p; int n, m, t; };
  RngStream r(11);
  for (const Shape& s : {Shape{Protocol::wu, 4, 2, 0}, Shape{Protocol::improved3, 3, 2, 0},
                         Shape{Protocol::improved45, 5, 3, 2}, Shape{Protocol::improved_multi, 7, 2, 2}}) {
    const ProtocolInfo info = make_protocol_info(s.p, s.n, s.m, s.t, std::nullopt);
    for (int k = 0; k < 40; ++k) {
      InputMatrix x(static_cast<std::size_t>(s.n), std::vector<int>(static_cast<std::size_t>(s.m)));
      for (auto& row : x)
        for (int& v : row) v = r.uniform_int(info.d);
      auto honest = strategy_honest();
      const RunOutcome o = run_protocol(s.p, s.n, s.m, s.t, x, *honest, static_cast<std::uint64_t>(k));
      if (!o.sum || *o.sum != expected_sum(x, info.d))
        return std::string("wrong or missing sum for ") + std::string(to_string(s.p));
    }
  }
  return {};
}

std::string mask_cancellation() {
  RngStream r(5);
  for (int n = 3; n <= 9; ++n) {
    const int d = n - 1;
    std::vector<int> masks(static_cast<std::size_t>(n + 1));
    for (int i = 1; i <= n; ++i) masks[static_cast<std::size_t>(i)] = r.uniform_int(d);
    long long total = 0;
    for (int i = 1; i <= n; ++i)
      total += (d - masks[static_cast<std::size_t>(i)]) + masks[static_cast<std::size_t>(ring_step(i, 1, n))];
    if (mod(total, d) != 0) return "masks do not cancel at n=" + std::to_string(n);
  }
  return {};
}

std::string determinism() {
  ScenarioConfig cfg;
  cfg.protocol = Protocol::improved_multi;
  cfg.n = 6;
  cfg.m = 2;
  cfg.t = 1;
  cfg.trials = 20;
  cfg.seed = 99;
  cfg.strategy.name = "coalition";
  const TrialResult a = run_trial(cfg, 3);
  const TrialResult b = run_trial(cfg, 3);
  if (a.outcome.transcript.to_jsonl() != b.outcome.transcript.to_jsonl()) return "transcripts differ";
  ScenarioConfig par = cfg;
  par.workers = 3;
  if (!run_monte_carlo(cfg).same_outcomes(run_monte_carlo(par))) return "stats depend on worker count";
  return {};
}

std::string efficiency() {
  if (qubit_efficiency(6, 4, 2).eta != boost::rational<long long>(1, 9)) return "eta(6,4,2) != 1/9";
  for (int n = 3; n <= 12; ++n)
    for (int m = 1; m <= 6; ++m)
      for (int t = 0; t <= m; ++t) {
        const EfficiencyReport e = qubit_efficiency(n, m, t);
        if (e.eta != e.c / (e.q + e.b)) return "eta != c/(q+b)";
      }
  return {};
}

std::string leakage() {
  const LeakageReport r = leakage_audit_improved3(64);
  return r.passed() ? std::string{} : r.summary();
}

std::string wu_attacks() {
  RngStream r(3);
  for (int k = 0; k < 30; ++k) {
    const int n = 6;
    InputMatrix x(n, std::vector<int>(2));
    for (auto& row : x)
      for (int& v : row) v = r.uniform_int(n - 1);
    auto two = strategy_collusive_two(1 + k % n);
    auto four = strategy_collusive_four(1 + k % n);
    const RunOutcome a = run_wu(n, 2, x, *two, static_cast<std::uint64_t>(k));
    const RunOutcome b = run_wu(n, 2, x, *four, static_cast<std::uint64_t>(k));
    if (a.detected || !a.attack_report || !a.attack_report->success) return "two-party extraction failed";
    if (b.detected || !b.attack_report || !b.attack_report->success) return "four-party extraction failed";
  }
  return {};
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::vector<std::pair<std::string, Check>> suites{
      {"bell algebra", bell_algebra}, {"telescoping sums", telescoping},
      {"mask cancellation", mask_cancellation}, {"determinism", determinism},
      {"efficiency identity", efficiency}, {"three-party leakage", leakage},
      {"wu collusive attacks", wu_attacks}};
  bool ok = true;
  for (const auto& [name, check] : suites) {
    std::string failure;
    try {
      failure = check();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    out << (failure.empty() ? "[PASS] " : "[FAIL] ") << name;
    if (!failure.empty()) out << ": " << failure;
    out << "\n";
    ok = ok && failure.empty();
  }
  return ok;
}

}  // namespace qsum
