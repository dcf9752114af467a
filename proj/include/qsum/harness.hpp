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
 * Scenario files, Monte Carlo driver, statistics and reports.
 *
 * Scenario grammar (one `key = value` per line, `#` starts a comment):
 *
 *   schema = 1                      required, must be 1
 *   name = <identifier>             defaults to the file stem
 *   protocol = wu | improved3 | improved45 | improved_multi
 *   n = <int>  m = <int>  t = <int>  d = <int>
 *   inputs = random | <row>; <row>; ...   rows of m integers, n rows
 *   strategy = <name>               see make_strategy
 *   strategy.<param> = <value>
 *   trials = <int>                  default 1000
 *   seed = <uint64>                 printed by the CLI when omitted
 *   output = <path>   format = json | csv
 *   workers = <int>                 default 1
 *   check_threshold = <int>         default 0
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "qsum/adversary.hpp"
#include "qsum/protocols.hpp"

namespace qsum {

struct ScenarioConfig {
  int schema = 1;
  std::string name = "scenario";
  Protocol protocol = Protocol::wu;
  int n = 3;
  int m = 1;
  int t = 0;
  std::optional<int> d;
  bool random_inputs = true;
  InputMatrix inputs;
  StrategySpec strategy;
  int trials = 1000;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string format = "json";
  int workers = 1;
  int check_threshold = 0;

  ProtocolInfo info() const { return make_protocol_info(protocol, n, m, t, d); }
};

/// Parses and validates; ConfigError messages carry `origin:line`.
ScenarioConfig parse_scenario(std::string_view text, std::string_view origin = "<scenario>",
                              std::string_view default_name = "scenario");
ScenarioConfig load_scenario(const std::filesystem::path& path);
/// Checks protocol/parameter compatibility, t feasibility, input shape and
/// that the strategy accepts the protocol.
void validate_scenario(const ScenarioConfig& cfg);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Wilson score interval; z defaults to the two-sided 95% quantile.
Interval wilson_interval(std::uint64_t hits, std::uint64_t total, double z = 1.959963984540054);

struct RateEstimate {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  double rate() const { return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0; }
  Interval wilson() const { return wilson_interval(hits, total); }
  friend bool operator==(const RateEstimate&, const RateEstimate&) = default;
};

struct CheckTotals {
  std::uint64_t decoys_checked = 0;
  std::uint64_t decoy_mismatches = 0;
  std::uint64_t bell_checks = 0;
  std::uint64_t bell_mismatches = 0;
  friend bool operator==(const CheckTotals&, const CheckTotals&) = default;
};

struct Stats {
  std::uint64_t trials = 0;
  RateEstimate correct_sum;  // over all trials
  RateEstimate detection;    // over all trials
  std::uint64_t attack_trials = 0;
  RateEstimate attack_success;       // undetected with every coordinate right, over attack trials
  RateEstimate coordinate_accuracy;  // right coordinates among undetected attack trials
  RateEstimate silent_success;       // undetected and right, over all attacked coordinates
  CheckTotals checks;
  std::string transcript_digest;  // hex digest of every transcript in trial order
  double mean_runtime_us = 0.0;   // not part of the outcome comparison

  /// Equality of everything except timing.
  bool same_outcomes(const Stats& other) const;
};

struct TrialResult {
  InputMatrix inputs;
  RunOutcome outcome;
};

/// Runs trial `index` with sub-seed derive_seed(seed, index). Errors are
/// rethrown with the trial index prefixed.
TrialResult run_trial(const ScenarioConfig& cfg, std::uint64_t index);

/// Runs cfg.trials trials on cfg.workers threads. Requires cfg.seed.
Stats run_monte_carlo(const ScenarioConfig& cfg);

struct EfficiencyReport {
  int n = 0, m = 0, t = 0, lambda = 0;
  boost::rational<long long> c, q, b, eta;
  /// b including the check-position and checked-result announcements.
  boost::rational<long long> b_full, eta_full;
  /// Plaintext digits per party; the closed form equals c_plaintext / b.
  boost::rational<long long> c_plaintext;
  double eta_decimal() const { return boost::rational_cast<double>(eta); }
};

/// eta = 2m / (((lambda - 1) t + 2m) n), q = 4mn, b = (lambda - 1) n t + 2mn
/// and c = eta (q + b). t = 0 is allowed here. Throws DomainError on
/// non-positive n, m, lambda or negative t.
EfficiencyReport qubit_efficiency(int n, int m, int t, int lambda);
inline EfficiencyReport qubit_efficiency(int n, int m, int t) { return qubit_efficiency(n, m, t, n / 2); }

std::string format_rational(const boost::rational<long long>& r);

/// Exact detection probability of measure_one_position: (t / 2m)(d - 1)/d.
boost::rational<long long> measure_one_position_detection(int m, int t, int d);

enum class ReportFormat { json, csv };
ReportFormat parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "scenario,protocol,n,m,t,trials,correct_rate,detect_rate,attack_success,eta";

std::string render_report(const ScenarioConfig& cfg, const Stats& stats, ReportFormat format);
/// Writes the report; I/O failures throw std::runtime_error naming the path.
void emit_report(const ScenarioConfig& cfg, const Stats& stats, ReportFormat format,
                 const std::filesystem::path& path);

struct LoadedReport {
  std::string version;
  ScenarioConfig scenario;
  Stats stats;
  std::optional<EfficiencyReport> efficiency;
};

LoadedReport parse_report_json(std::string_view text);
LoadedReport load_report_json(const std::filesystem::path& path);

/// Runs the quick invariant suites, printing one line per suite.
bool run_selftest(std::ostream& out);

}  // namespace qsum
