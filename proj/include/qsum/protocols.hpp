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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsum/strategy.hpp"
#include "qsum/transcript.hpp"

namespace qsum {

using InputMatrix = std::vector<std::vector<int>>;  // inputs[i - 1] = x_i

struct RunOptions {
  std::optional<int> d;         // defaults to n - 1
  int check_threshold = 0;      // tolerated mismatches per decoy or Bell check
  bool zero_masks = false;      // draw every random mask as 0 (testing aid)
  std::string run_id = "run";
};

struct AttackOutcome {
  std::vector<int> coalition;
  int target = 0;
  std::vector<int> guess;
  std::vector<int> truth;
  bool success = false;
  bool detected = false;
};

struct CheckStats {
  int decoys_checked = 0;
  int decoy_mismatches = 0;
  int bell_checks = 0;
  int bell_mismatches = 0;  // only counted by verifying owners
};

struct RunOutcome {
  ProtocolInfo info;
  std::optional<std::vector<int>> sum;  // absent iff aborted
  bool detected = false;
  std::string abort_reason;
  Transcript transcript;
  std::optional<AttackGuess> guess;
  std::optional<AttackOutcome> attack_report;
  CheckStats checks;
  std::vector<std::vector<int>> published;  // P_i by party, empty if aborted

  bool aborted() const { return !sum.has_value(); }
};

RunOutcome run_wu(int n, int m, const InputMatrix& inputs, Strategy& strategy, std::uint64_t seed,
                  const RunOptions& opts = {});
RunOutcome run_improved3(int m, const InputMatrix& inputs, Strategy& strategy, std::uint64_t seed,
                         const RunOptions& opts = {});
RunOutcome run_improved45(int n, int m, int t, const InputMatrix& inputs, Strategy& strategy,
                          std::uint64_t seed, const RunOptions& opts = {});
RunOutcome run_improved_multi(int n, int m, int t, const InputMatrix& inputs, Strategy& strategy,
                              std::uint64_t seed, const RunOptions& opts = {});

RunOutcome run_protocol(Protocol protocol, int n, int m, int t, const InputMatrix& inputs,
                        Strategy& strategy, std::uint64_t seed, const RunOptions& opts = {});

/// (sum_i x_i) mod d.
std::vector<int> expected_sum(const InputMatrix& inputs, int d);

/// Throws ConfigError when (protocol, n, m, t) is not a runnable shape.
void validate_shape(const ProtocolInfo& info);

}  // namespace qsum
