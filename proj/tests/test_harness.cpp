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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qsum/errors.hpp"
#include "qsum/harness.hpp"

using namespace qsum;

namespace {

std::string config_error(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string without_timing(const std::string& report) {
  auto j = nlohmann::json::parse(report);
  j.erase("timing");
  return j.dump();
}

}  // namespace

TEST_CASE("scenario parsing") {
  const ScenarioConfig cfg = parse_scenario(
      "# comment\nschema = 1\nprotocol = improved_multi\nn = 6\nm = 2\nt = 1\n"
      "inputs = 1 0; 2 3; 4 4; 0 1; 3 2; 1 1\nstrategy = coalition\nstrategy.target = 2\n"
      "strategy.measure = none\ntrials = 10\nseed = 5\n",
      "<test>", "demo");
  CHECK(cfg.name == "demo");
  CHECK(cfg.protocol == Protocol::improved_multi);
  CHECK(cfg.n == 6);
  CHECK_FALSE(cfg.random_inputs);
  CHECK(cfg.inputs[1] == std::vector<int>{2, 3});
  CHECK(cfg.strategy.name == "coalition");
  CHECK(cfg.strategy.params.at("target") == "2");
  CHECK(cfg.trials == 10);
  CHECK(*cfg.seed == 5);
  CHECK(cfg.workers == 1);
  CHECK(cfg.format == "json");

  const ScenarioConfig defaults = parse_scenario("schema = 1\nprotocol = wu\nn = 4\nm = 2\n");
  CHECK(defaults.trials == 1000);
  CHECK(defaults.random_inputs);
  CHECK_FALSE(defaults.seed);
}

TEST_CASE("scenario diagnostics") {
  CHECK(config_error("schema = 1\nprotocol = improved45\nn = 6\nm = 2\nt = 1\n").find("n ∈ {4,5}") !=
        std::string::npos);
  CHECK(config_error("schema = 1\nprotocol = improved3\nn = 4\nm = 2\n").find("n = 3") != std::string::npos);
  CHECK(config_error("schema = 1\nprotocol = improved45\nn = 4\nm = 2\nt = 3\n").find("select_check_positions") !=
        std::string::npos);
  CHECK(config_error("protocol = wu\nn = 4\nm = 2\n").find("schema") != std::string::npos);
  CHECK(config_error("schema = 2\nprotocol = wu\nn = 4\nm = 2\n").find("schema") != std::string::npos);
  CHECK(config_error("schema = 1\nprotocol = wu\nn = 4\nm = 2\ncolour = red\n").find("colour") != std::string::npos);
  CHECK(config_error("schema = 1\nprotocol = wu\nn = 4\nn = 5\nm = 2\n").find("duplicate") != std::string::npos);
  CHECK(config_error("schema = 1\nprotocol = wu\nn = four\nm = 2\n").find("integer") != std::string::npos);
  CHECK_FALSE(config_error("schema = 1\nprotocol = wu\nn = 4\nm = 2\ninputs = 1 2; 0 0\n").empty());
  CHECK_FALSE(config_error("schema = 1\nprotocol = wu\nn = 4\nm = 1\nstrategy = collusive_two\nstrategy.j = 1\n").empty());
}

TEST_CASE("shipped scenarios load") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(QSUM_SCENARIO_DIR)) {
    if (entry.path().extension() != ".scenario") continue;
    const ScenarioConfig cfg = load_scenario(entry.path());
    CHECK(cfg.name == entry.path().stem().string());
    CHECK(cfg.seed);
    ++count;
  }
  CHECK(count >= 8);
}

TEST_CASE("Wilson interval") {
  const Interval w = wilson_interval(50, 100);
  CHECK(w.lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(w.hi == doctest::Approx(0.5962).epsilon(1e-3));
  const Interval zero = wilson_interval(0, 100);
  CHECK(zero.lo == doctest::Approx(0.0));
  CHECK(zero.hi == doctest::Approx(0.0370).epsilon(1e-2));
  const Interval all = wilson_interval(100, 100);
  CHECK(all.hi == doctest::Approx(1.0));
  CHECK(all.lo < 1.0);
  const Interval none = wilson_interval(0, 0);
  CHECK(none.lo == 0.0);
  RateEstimate r{17, 40};
  CHECK(r.wilson().lo <= r.rate());
  CHECK(r.wilson().hi >= r.rate());
}

TEST_CASE("Monte Carlo results do not depend on the worker count") {
  ScenarioConfig cfg = parse_scenario(
      "schema = 1\nprotocol = improved45\nn = 4\nm = 4\nt = 2\nstrategy = measure_one_position\n"
      "strategy.attacker = 2\nstrategy.position = 3\ntrials = 300\nseed = 11\n");
  const Stats one = run_monte_carlo(cfg);
  cfg.workers = 4;
  const Stats four = run_monte_carlo(cfg);
  CHECK(one.same_outcomes(four));
  CHECK(one.transcript_digest == four.transcript_digest);
  CHECK(one.detection.hits > 0);
  cfg.seed = 12;
  CHECK_FALSE(run_monte_carlo(cfg).same_outcomes(one));
}

TEST_CASE("honest and attacked Monte Carlo aggregates") {
  const Stats h = run_monte_carlo(parse_scenario(
      "schema = 1\nprotocol = improved45\nn = 4\nm = 4\nt = 2\ntrials = 200\nseed = 3\n"));
  CHECK(h.correct_sum.hits == 200);
  CHECK(h.detection.hits == 0);
  CHECK(h.attack_trials == 0);

  const Stats a = run_monte_carlo(parse_scenario(
      "schema = 1\nprotocol = wu\nn = 4\nm = 2\nstrategy = collusive_two\ntrials = 200\nseed = 3\n"));
  CHECK(a.attack_trials == 200);
  CHECK(a.attack_success.hits == 200);
  CHECK(a.detection.hits == 0);
}

TEST_CASE("reports") {
  const ScenarioConfig cfg = parse_scenario(
      "schema = 1\nprotocol = improved_multi\nn = 6\nm = 2\nt = 1\nstrategy = coalition\n"
      "strategy.target = 1\ntrials = 40\nseed = 8\n",
      "<test>", "round_trip");
  const Stats stats = run_monte_carlo(cfg);
  const std::string json = render_report(cfg, stats, ReportFormat::json);
  const LoadedReport back = parse_report_json(json);
  CHECK(back.scenario.name == "round_trip");
  CHECK(back.scenario.protocol == cfg.protocol);
  CHECK(back.scenario.n == 6);
  CHECK(back.scenario.t == 1);
  CHECK(*back.scenario.seed == 8);
  CHECK(back.scenario.strategy.params == cfg.strategy.params);
  CHECK(back.stats.same_outcomes(stats));
  REQUIRE(back.efficiency);
  CHECK(back.efficiency->eta == qubit_efficiency(6, 2, 1).eta);
  CHECK_FALSE(back.version.empty());

  const auto j = nlohmann::ordered_json::parse(json);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"version", "timing", "scenario", "stats", "efficiency", "notes"});

  const std::string again = render_report(cfg, run_monte_carlo(cfg), ReportFormat::json);
  CHECK(without_timing(json) == without_timing(again));

  const std::string csv = render_report(cfg, stats, ReportFormat::csv);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(csv.find("\nround_trip,improved_multi,6,2,1,40,") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "qsum_report_test.json";
  emit_report(cfg, stats, ReportFormat::json, path);
  CHECK(load_report_json(path).stats.same_outcomes(stats));
  std::filesystem::remove(path);
  CHECK_THROWS(parse_format("xml"));
}

TEST_CASE("qubit efficiency") {
  using R = boost::rational<long long>;
  const EfficiencyReport e = qubit_efficiency(6, 4, 2, 3);
  CHECK(e.eta == R(1, 9));
  CHECK(e.eta == e.c / (e.q + e.b));
  CHECK(e.q == R(96));
  CHECK(e.b == R(72));
  CHECK(e.eta_decimal() == doctest::Approx(1.0 / 9.0));
  CHECK(qubit_efficiency(6, 1, 1, 3).eta == R(1, 12));
  for (int n = 3; n <= 9; ++n) CHECK(qubit_efficiency(n, 3, 0).eta == R(1, n));
  CHECK(e.b_full > e.b);
  CHECK(e.eta_full == e.c / (e.q + e.b_full));
  CHECK(format_rational(R(1, 9)) == "1/9");
  CHECK(format_rational(R(4)) == "4");
  CHECK_THROWS_AS(qubit_efficiency(0, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(qubit_efficiency(6, 1, -1, 3), DomainError);
  CHECK(measure_one_position_detection(4, 2, 3) == R(1, 6));
}

TEST_CASE("empirical rates stay within three sigma for at least 99 of 100 seeds") {
  // One outsider-watched hop carrying a single decoy in the three-party
  // protocol: abort probability 1 - 3/4.
  const double p = 0.25;
  const int trials = 200;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  int inside = 0;
  for (int seed = 1; seed <= 100; ++seed) {
    std::ostringstream text;
    text << "schema = 1\nprotocol = improved3\nn = 3\nm = 1\nstrategy = intercept_resend\n"
         << "strategy.senders = 1\ntrials = " << trials << "\nseed = " << seed << "\n";
    const Stats s = run_monte_carlo(parse_scenario(text.str()));
    if (std::abs(s.detection.rate() - p) <= 3 * sigma) ++inside;
  }
  CHECK(inside >= 99);
}
