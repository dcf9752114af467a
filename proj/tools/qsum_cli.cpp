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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "qsum/errors.hpp"
#include "qsum/harness.hpp"
#include "qsum/leakage.hpp"
#include "qsum/version.hpp"

namespace {

constexpr int kExitAborted = 2;
constexpr int kExitConfig = 64;

std::string percent(const qsum::RateEstimate& r) {
  const qsum::Interval w = r.wilson();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.4f  [%.4f, %.4f]  (%llu/%llu)", r.rate(), w.lo, w.hi,
                static_cast<unsigned long long>(r.hits), static_cast<unsigned long long>(r.total));
  return buf;
}

struct RunArgs {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> workers;
  std::string out;
  std::string format;
  std::string transcript;
};

int cmd_run(const RunArgs& a) {
  qsum::ScenarioConfig cfg = qsum::load_scenario(a.file);
  if (a.seed) cfg.seed = a.seed;
  if (a.trials) cfg.trials = *a.trials;
  if (a.workers) cfg.workers = *a.workers;
  if (!a.out.empty()) cfg.output = a.out;
  if (!a.format.empty()) cfg.format = a.format;
  if (!cfg.seed) {
    cfg.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
    std::cout << "seed = " << *cfg.seed << " (not given; pass --seed " << *cfg.seed
              << " to reproduce)\n";
  }
  qsum::validate_scenario(cfg);

  const qsum::Stats stats = qsum::run_monte_carlo(cfg);
  std::cout << "scenario   " << cfg.name << " (" << qsum::to_string(cfg.protocol) << ", n=" << cfg.n
            << ", m=" << cfg.m << ", t=" << cfg.t << ", d=" << cfg.info().d
            << ", strategy=" << cfg.strategy.name << ")\n"
            << "trials     " << stats.trials << "  seed " << *cfg.seed << "\n"
            << "correct    " << percent(stats.correct_sum) << "\n"
            << "detected   " << percent(stats.detection) << "\n";
  if (stats.attack_trials) {
    std::cout << "extracted  " << percent(stats.attack_success) << "\n"
              << "silent     " << percent(stats.silent_success) << "  per coordinate\n";
  }
  std::cout << "digest     " << stats.transcript_digest << "\n";

  if (!cfg.output.empty()) {
    qsum::emit_report(cfg, stats, qsum::parse_format(cfg.format), cfg.output);
    std::cout << "report     " << cfg.output << "\n";
  }

  if (cfg.trials == 1) {
    const qsum::TrialResult single = qsum::run_trial(cfg, 0);
    if (!a.transcript.empty()) {
      std::ofstream out(a.transcript, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open transcript file " + a.transcript);
      out << single.outcome.transcript.to_jsonl();
    }
    if (single.outcome.detected) {
      std::cout << "aborted    " << single.outcome.abort_reason << "\n";
      return kExitAborted;
    }
    std::cout << "sum       ";
    for (int v : *single.outcome.sum) std::cout << ' ' << v;
    std::cout << "\n";
  }
  return 0;
}

int cmd_efficiency(int n, int m, int t, std::optional<int> lambda) {
  const qsum::EfficiencyReport e = qsum::qubit_efficiency(n, m, t, lambda.value_or(n / 2));
  std::cout << "n=" << e.n << " m=" << e.m << " t=" << e.t << " lambda=" << e.lambda << "\n"
            << "eta      " << qsum::format_rational(e.eta) << " = " << e.eta_decimal() << "\n"
            << "q        " << qsum::format_rational(e.q) << "\n"
            << "b        " << qsum::format_rational(e.b) << "\n"
            << "c        " << qsum::format_rational(e.c) << "  (eta * (q + b); plaintext digits "
            << qsum::format_rational(e.c_plaintext) << ")\n"
            << "b_full   " << qsum::format_rational(e.b_full) << "  (adds position and checked-result announcements)\n"
            << "eta_full " << qsum::format_rational(e.eta_full) << "\n";
  return 0;
}

int cmd_audit() {
  const qsum::LeakageReport r = qsum::leakage_audit_improved3();
  for (const auto& row : r.rows) {
    std::cout << "view x2=" << row.view[0] << " s1=" << row.view[1] << " s2=" << row.view[2]
              << " s1(A1)=" << row.view[3] << " P=(" << row.view[4] << "," << row.view[5] << ","
              << row.view[6] << ")  posterior";
    for (const auto& [pair, p] : row.posterior)
      std::cout << " (" << pair.first << "," << pair.second << "):" << qsum::format_rational(p);
    std::cout << (row.matches ? "  = ideal\n" : "  != ideal\n");
  }
  std::cout << r.summary() << "\n" << (r.passed() ? "PASS" : "FAIL") << "\n";
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for multi-party quantum summation protocols over d-dimensional Bell states"};
  app.set_version_flag("--version", std::string(qsum::kVersion));
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("file", run_args.file, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", run_args.seed, "Master seed (overrides the file)");
  run->add_option("--trials", run_args.trials, "Trial count (overrides the file)");
  run->add_option("--workers", run_args.workers, "Worker threads");
  run->add_option("--out", run_args.out, "Report path");
  run->add_option("--format", run_args.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--transcript", run_args.transcript, "Write the JSONL transcript (single-trial runs)");

  int n = 0, m = 0, t = 0;
  std::optional<int> lambda;
  auto* eff = app.add_subcommand("efficiency", "Qubit efficiency of the multi-party protocol");
  eff->add_option("--n", n, "Parties")->required();
  eff->add_option("--m", m, "Input length")->required();
  eff->add_option("--t", t, "Check qudits per party")->required();
  eff->add_option("--lambda", lambda, "Hop count (default floor(n/2))");

  auto* audit = app.add_subcommand("audit-leakage", "Exhaustive three-party leakage audit");
  auto* self = app.add_subcommand("selftest", "Run the built-in invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*eff) return cmd_efficiency(n, m, t, lambda);
    if (*audit) return cmd_audit();
    if (*self) return qsum::run_selftest(std::cout) ? 0 : 1;
  } catch (const qsum::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qsum::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
