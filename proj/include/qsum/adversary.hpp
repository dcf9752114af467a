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
 * Party and outsider behaviours: the honest baseline, the collusive attack
 * scripts against Wu's protocol, single-particle measurement, channel
 * intercept-resend, and a general (n-2)-member coalition.
 */
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qsum/inference.hpp"
#include "qsum/protocols.hpp"
#include "qsum/strategy.hpp"

namespace qsum {

std::unique_ptr<Strategy> strategy_honest();

/// {A_i, A_{i+2}} extract A_{i+1}'s input.
std::unique_ptr<Strategy> strategy_collusive_two(int i);

/// {A_i, A_{i+1}, A_{i+3}, A_{i+4}} extract A_{i+2}'s input from published
/// values alone.
std::unique_ptr<Strategy> strategy_collusive_four(int i);

/// `attacker` measures the first particle at `position` (1-based) of the
/// sequence that originates at `origin` when it arrives. origin = 0 means the
/// attacker's predecessor.
std::unique_ptr<Strategy> strategy_measure_one_position(int attacker, int position, int origin = 0);

/// Outsider measuring every particle of the selected transmissions in the
/// computational basis. Empty selectors match everything.
std::unique_ptr<Strategy> strategy_intercept_resend(std::vector<int> senders = {},
                                                    std::vector<int> hops = {});

enum class CoalitionMeasure { none, own, all };

/// `members` pool every record and observation and solve for `target`.
/// own: each member measures its own first particles before sending.
/// all: additionally measures every honest sequence at its first arrival at
/// a member.
std::unique_ptr<Strategy> strategy_coalition(int target, std::vector<int> members,
                                             CoalitionMeasure measure);

/// Scenario-level description from which fresh per-run instances are built.
struct StrategySpec {
  std::string name = "honest";
  std::map<std::string, std::string> params;
};

/// Throws ConfigError on unknown names, malformed parameters, or parameters
/// that do not fit a run of n parties.
std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec, int n);

/// Throws UsageError when the run carries no guess.
AttackOutcome evaluate_attack(const RunOutcome& run, const std::vector<int>& truth);

}  // namespace qsum
