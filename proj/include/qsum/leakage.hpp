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

/**
 * @file
 * Exhaustive information audit of the three-party protocol at d = 2, m = 1
 * against a curious A_2 that measures its own first particle early.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace qsum {

using Rational = boost::rational<long long>;

/// A_2's complete view: x2, s1 of its own pair, s2 of its own pair, the
/// outcome of A_1's sequence, and the published P_1, P_2, P_3.
using LeakageView = std::array<int, 7>;

struct LeakageRow {
  LeakageView view{};
  int sum13 = 0;  // x1 + x3 mod 2, fixed by the view
  std::map<std::pair<int, int>, Rational> posterior;  // over (x1, x3)
  std::map<std::pair<int, int>, Rational> ideal;      // given x1 + x3 only
  bool matches = false;
};

struct LeakageReport {
  std::vector<LeakageRow> rows;
  int mismatched_views = 0;
  int concentrated_views = 0;  // posterior equal to 1 on a single pair
  int engine_runs = 0;
  int engine_views_outside_support = 0;
  int engine_sum_errors = 0;

  bool passed() const {
    return !rows.empty() && mismatched_views == 0 && concentrated_views == 0 &&
           engine_views_outside_support == 0 && engine_sum_errors == 0;
  }
  std::string summary() const;
};

/// Enumerates every input triple and every measurement branch with exact
/// Born weights, then replays `engine_runs` seeded protocol runs with the
/// same curious A_2 and checks each observed view lies in the enumerated
/// support.
LeakageReport leakage_audit_improved3(int engine_runs = 512, std::uint64_t seed = 1);

}  // namespace qsum
