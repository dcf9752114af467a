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

#include "qsum/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qsum/errors.hpp"
#include "qsum/protocol_math.hpp"
#include "qsum/rng.hpp"
#include "qsum/version.hpp"

namespace qsum {

namespace {

using Json = nlohmann::ordered_json;
using Ratio = boost::rational<long long>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& where, const std::string& key, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(where + ": " + key + " expects an integer, got '" + text + "'");
  return v;
}

InputMatrix parse_inputs(const std::string& where, const std::string& text) {
  InputMatrix rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::replace(row.begin(), row.end(), ',', ' ');
    std::stringstream rs(row);
    std::vector<int> values;
    std::string item;
    while (rs >> item) values.push_back(parse_number<int>(where, "inputs", item));
    if (!values.empty()) rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ConfigError(where + ": inputs must be 'random' or rows separated by ';'");
  return rows;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "schema", "name",   "protocol", "n",      "m",       "t",
      "d",      "inputs", "strategy", "trials", "seed",    "output",
      "format", "workers", "check_threshold"};
  return keys;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <typename E>
[[noreturn]] void rethrow_with_prefix(const std::string& prefix, const E& e) {
  throw E(prefix + e.what());
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario files

ScenarioConfig parse_scenario(std::string_view text, std::string_view origin,
                              std::string_view default_name) {
  ScenarioConfig cfg;
  cfg.name = std::string(default_name);
  std::set<std::string> seen;
  bool has_schema = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(where + ": empty key or value");
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");

    if (key.rfind("strategy.", 0) == 0) {
      cfg.strategy.params[key.substr(9)] = value;
      continue;
    }
    if (!known_keys().contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");

    if (key == "schema") {
      cfg.schema = parse_number<int>(where, key, value);
      if (cfg.schema != 1)
        throw ConfigError(where + ": unsupported schema " + value + " (this build reads schema 1)");
      has_schema = true;
    } else if (key == "name") {
      cfg.name = value;
    } else if (key == "protocol") {
      try {
        cfg.protocol = parse_protocol(value);
      } catch (const ConfigError& e) {
        rethrow_with_prefix(where + ": ", e);
      }
    } else if (key == "n") {
      cfg.n = parse_number<int>(where, key, value);
    } else if (key == "m") {
      cfg.m = parse_number<int>(where, key, value);
    } else if (key == "t") {
      cfg.t = parse_number<int>(where, key, value);
    } else if (key == "d") {
      cfg.d = parse_number<int>(where, key, value);
    } else if (key == "inputs") {
      cfg.random_inputs = value == "random";
      if (!cfg.random_inputs) cfg.inputs = parse_inputs(where, value);
    } else if (key == "strategy") {
      cfg.strategy.name = value;
    } else if (key == "trials") {
      cfg.trials = parse_number<int>(where, key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(where, key, value);
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "workers") {
      cfg.workers = parse_number<int>(where, key, value);
    } else if (key == "check_threshold") {
      cfg.check_threshold = parse_number<int>(where, key, value);
    }
  }
  if (!has_schema) throw ConfigError(std::string(origin) + ": missing required key 'schema'");
  try {
    validate_scenario(cfg);
  } catch (const ConfigError& e) {
    rethrow_with_prefix(std::string(origin) + ": ", e);
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.string(), path.stem().string());
}

void validate_scenario(const ScenarioConfig& cfg) {
  const ProtocolInfo info = cfg.info();
  validate_shape(info);
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (cfg.check_threshold < 0) throw ConfigError("check_threshold must be >= 0");
  parse_format(cfg.format);
  if (!cfg.random_inputs) {
    if (static_cast<int>(cfg.inputs.size()) != cfg.n)
      throw ConfigError("inputs has " + std::to_string(cfg.inputs.size()) + " rows, expected n=" +
                        std::to_string(cfg.n));
    for (const auto& row : cfg.inputs) {
      if (static_cast<int>(row.size()) != cfg.m)
        throw ConfigError("every inputs row needs m=" + std::to_string(cfg.m) + " values");
      for (int v : row)
        if (v < 0 || v >= info.d)
          throw ConfigError("input " + std::to_string(v) + " outside Z_" + std::to_string(info.d));
    }
  }
  try {
    auto strategy = make_strategy(cfg.strategy, cfg.n);
    strategy->bind(info);
    strategy->validate(info);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Statistics

Interval wilson_interval(std::uint64_t hits, std::uint64_t total, double z) {
  if (total == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(total);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

bool Stats::same_outcomes(const Stats& o) const {
  return trials == o.trials && correct_sum == o.correct_sum && detection == o.detection &&
         attack_trials == o.attack_trials && attack_success == o.attack_success &&
         coordinate_accuracy == o.coordinate_accuracy && silent_success == o.silent_success &&
         checks == o.checks && transcript_digest == o.transcript_digest;
}

TrialResult run_trial(const ScenarioConfig& cfg, std::uint64_t index) {
  if (!cfg.seed) throw UsageError("run_trial: scenario has no seed");
  const std::string prefix = "trial " + std::to_string(index) + ": ";
  try {
    const ProtocolInfo info = cfg.info();
    const std::uint64_t seed = derive_seed(*cfg.seed, index);
    TrialResult out;
    if (cfg.random_inputs) {
      RngStream r = RngStream::derive(seed, 0x1b7e5ULL);
      out.inputs.assign(static_cast<std::size_t>(cfg.n), std::vector<int>(static_cast<std::size_t>(cfg.m)));
      for (auto& row : out.inputs)
        for (int& v : row) v = r.uniform_int(info.d);
    } else {
      out.inputs = cfg.inputs;
    }
    auto strategy = make_strategy(cfg.strategy, cfg.n);
    RunOptions opts;
    opts.d = cfg.d;
    opts.check_threshold = cfg.check_threshold;
    opts.run_id = cfg.name + "/" + std::to_string(index);
    out.outcome = run_protocol(cfg.protocol, cfg.n, cfg.m, cfg.t, out.inputs, *strategy, seed, opts);
    return out;
  } catch (const ConfigError& e) {
    rethrow_with_prefix(prefix, e);
  } catch (const DomainError& e) {
    rethrow_with_prefix(prefix, e);
  } catch (const UsageError& e) {
    rethrow_with_prefix(prefix, e);
  } catch (const std::exception& e) {
    throw std::runtime_error(prefix + e.what());
  }
}

namespace {

struct TrialRecord {
  bool correct = false;
  bool detected = false;
  bool attacked = false;
  bool success = false;
  int coords = 0;
  int coords_right = 0;
  CheckStats checks;
  std::uint64_t digest = 0;
  double micros = 0.0;
};

TrialRecord record_trial(const ScenarioConfig& cfg, std::uint64_t index, bool attacking) {
  const auto start = std::chrono::steady_clock::now();
  TrialResult r = run_trial(cfg, index);
  const auto stop = std::chrono::steady_clock::now();
  TrialRecord rec;
  const RunOutcome& o = r.outcome;
  rec.correct = o.sum && *o.sum == expected_sum(r.inputs, o.info.d);
  rec.detected = o.detected;
  rec.attacked = attacking;
  if (attacking) {
    rec.coords = cfg.m;
    if (!o.detected && o.attack_report) {
      rec.success = o.attack_report->success;
      for (std::size_t j = 0; j < o.attack_report->guess.size(); ++j)
        if (o.attack_report->guess[j] == o.attack_report->truth[j]) ++rec.coords_right;
    }
  }
  rec.checks = o.checks;
  rec.digest = fnv1a(o.transcript.to_jsonl());
  rec.micros = std::chrono::duration<double, std::micro>(stop - start).count();
  return rec;
}

}  // namespace

Stats run_monte_carlo(const ScenarioConfig& cfg) {
  if (!cfg.seed) throw UsageError("run_monte_carlo: scenario has no seed");
  validate_scenario(cfg);
  const bool attacking = make_strategy(cfg.strategy, cfg.n)->produces_guess();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialRecord> records(trials);

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), trials);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    const std::size_t lo = w * trials / workers;
    const std::size_t hi = (w + 1) * trials / workers;
    try {
      for (std::size_t k = lo; k < hi; ++k) records[k] = record_trial(cfg, k, attacking);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Stats s;
  s.trials = trials;
  std::uint64_t digest = 0x9e3779b97f4a7c15ULL;
  double micros = 0.0;
  for (const TrialRecord& r : records) {
    s.correct_sum.total++;
    s.correct_sum.hits += r.correct;
    s.detection.total++;
    s.detection.hits += r.detected;
    if (r.attacked) {
      s.attack_trials++;
      s.attack_success.total++;
      s.attack_success.hits += r.success;
      s.silent_success.total += static_cast<std::uint64_t>(r.coords);
      s.silent_success.hits += static_cast<std::uint64_t>(r.coords_right);
      if (!r.detected) {
        s.coordinate_accuracy.total += static_cast<std::uint64_t>(r.coords);
        s.coordinate_accuracy.hits += static_cast<std::uint64_t>(r.coords_right);
      }
    }
    s.checks.decoys_checked += static_cast<std::uint64_t>(r.checks.decoys_checked);
    s.checks.decoy_mismatches += static_cast<std::uint64_t>(r.checks.decoy_mismatches);
    s.checks.bell_checks += static_cast<std::uint64_t>(r.checks.bell_checks);
    s.checks.bell_mismatches += static_cast<std::uint64_t>(r.checks.bell_mismatches);
    digest = mix64(digest ^ r.digest);
    micros += r.micros;
  }
  s.transcript_digest = hex64(digest);
  s.mean_runtime_us = micros / static_cast<double>(trials);
  return s;
}

// ---------------------------------------------------------------------------
// Efficiency

EfficiencyReport qubit_efficiency(int n, int m, int t, int lambda) {
  if (n < 1 || m < 1 || lambda < 1 || t < 0)
    throw DomainError("qubit_efficiency: need n, m, lambda >= 1 and t >= 0");
  EfficiencyReport r;
  r.n = n;
  r.m = m;
  r.t = t;
  r.lambda = lambda;
  const long long N = n, M = m, T = t, L = lambda;
  r.eta = Ratio(2 * M, ((L - 1) * T + 2 * M) * N);
  r.q = Ratio(4 * M * N);
  r.b = Ratio((L - 1) * N * T + 2 * M * N);
  r.c = r.eta * (r.q + r.b);
  r.b_full = r.b + Ratio(2 * N * T);
  r.eta_full = r.c / (r.q + r.b_full);
  r.c_plaintext = Ratio(2 * M);
  return r;
}

std::string format_rational(const Ratio& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

Ratio parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Ratio(std::stoll(s));
  return Ratio(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace

Ratio measure_one_position_detection(int m, int t, int d) {
  return Ratio(t, 2LL * m) * Ratio(d - 1, d);
}

// ---------------------------------------------------------------------------
// Reports

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ConfigError("format must be json or csv, got '" + std::string(name) + "'");
}

namespace {

Json rate_json(const RateEstimate& r) {
  const Interval w = r.wilson();
  return Json{{"hits", r.hits}, {"total", r.total}, {"rate", r.rate()}, {"wilson95", {w.lo, w.hi}}};
}

RateEstimate rate_from(const Json& j) {
  return RateEstimate{j.at("hits").get<std::uint64_t>(), j.at("total").get<std::uint64_t>()};
}

std::optional<EfficiencyReport> efficiency_for(const ScenarioConfig& cfg) {
  const ProtocolInfo info = cfg.info();
  if (!info.uses_shares()) return std::nullopt;
  return qubit_efficiency(cfg.n, cfg.m, cfg.t, info.hops);
}

std::string iso_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string render_report(const ScenarioConfig& cfg, const Stats& stats, ReportFormat format) {
  const ProtocolInfo info = cfg.info();
  const auto eff = efficiency_for(cfg);

  if (format == ReportFormat::csv) {
    std::string out(kCsvHeader);
    out += "\n" + cfg.name + "," + std::string(to_string(cfg.protocol)) + "," + std::to_string(cfg.n) +
           "," + std::to_string(cfg.m) + "," + std::to_string(cfg.t) + "," +
           std::to_string(stats.trials) + "," + fixed(stats.correct_sum.rate()) + "," +
           fixed(stats.detection.rate()) + "," +
           (stats.attack_trials ? fixed(stats.attack_success.rate()) : "") + "," +
           (eff ? fixed(eff->eta_decimal()) : "") + "\n";
    return out;
  }

  Json j;
  j["version"] = kVersion;
  j["timing"] = Json{{"generated_at", iso_now()},
                     {"mean_trial_us", stats.mean_runtime_us},
                     {"workers", cfg.workers}};

  Json sc;
  sc["name"] = cfg.name;
  sc["protocol"] = std::string(to_string(cfg.protocol));
  sc["n"] = cfg.n;
  sc["m"] = cfg.m;
  sc["t"] = cfg.t;
  sc["d"] = info.d;
  sc["d_override"] = cfg.d ? Json(*cfg.d) : Json(nullptr);
  sc["inputs"] = cfg.random_inputs ? Json("random") : Json(cfg.inputs);
  Json params = Json::object();
  for (const auto& [k, v] : cfg.strategy.params) params[k] = v;
  sc["strategy"] = Json{{"name", cfg.strategy.name}, {"params", params}};
  sc["trials"] = cfg.trials;
  sc["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
  sc["check_threshold"] = cfg.check_threshold;
  j["scenario"] = sc;

  Json st;
  st["trials"] = stats.trials;
  st["correct_sum"] = rate_json(stats.correct_sum);
  st["detection"] = rate_json(stats.detection);
  if (stats.attack_trials) {
    st["attack"] = Json{{"trials", stats.attack_trials},
                        {"success", rate_json(stats.attack_success)},
                        {"coordinate_accuracy", rate_json(stats.coordinate_accuracy)},
                        {"silent_success", rate_json(stats.silent_success)},
                        {"chance", 1.0 / info.d}};
  } else {
    st["attack"] = nullptr;
  }
  st["checks"] = Json{{"decoys_checked", stats.checks.decoys_checked},
                      {"decoy_mismatches", stats.checks.decoy_mismatches},
                      {"bell_checks", stats.checks.bell_checks},
                      {"bell_mismatches", stats.checks.bell_mismatches}};
  st["transcript_digest"] = stats.transcript_digest;
  j["stats"] = st;

  if (eff) {
    j["efficiency"] = Json{{"n", eff->n},
                           {"m", eff->m},
                           {"t", eff->t},
                           {"lambda", eff->lambda},
                           {"c", format_rational(eff->c)},
                           {"q", format_rational(eff->q)},
                           {"b", format_rational(eff->b)},
                           {"eta", format_rational(eff->eta)},
                           {"eta_decimal", eff->eta_decimal()},
                           {"b_full", format_rational(eff->b_full)},
                           {"eta_full", format_rational(eff->eta_full)},
                           {"c_plaintext", format_rational(eff->c_plaintext)}};
  } else {
    j["efficiency"] = nullptr;
  }

  Json notes = Json::array();
  if (cfg.strategy.name == "measure_one_position") {
    const Ratio exact = measure_one_position_detection(cfg.m, cfg.t, info.d);
    const Ratio bound(cfg.t, 2LL * cfg.m);
    notes.push_back("detection: exact Born probability (t/2m)(d-1)/d = " + format_rational(exact) +
                    "; the figure t/2m = " + format_rational(bound) +
                    " is an upper bound that assumes every checked disturbance changes the v label");
  }
  if (eff) {
    notes.push_back("efficiency: eta is the closed form 2m/(((lambda-1)t+2m)n), which equals c_plaintext/b; "
                    "c is reported as eta*(q+b); b_full adds the nt position and nt checked-result announcements");
  }
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

void emit_report(const ScenarioConfig& cfg, const Stats& stats, ReportFormat format,
                 const std::filesystem::path& path) {
  const std::string text = render_report(cfg, stats, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing report file " + path.string());
}

LoadedReport parse_report_json(std::string_view text) {
  const Json j = Json::parse(text);
  LoadedReport r;
  r.version = j.at("version").get<std::string>();

  const Json& sc = j.at("scenario");
  ScenarioConfig& cfg = r.scenario;
  cfg.name = sc.at("name").get<std::string>();
  cfg.protocol = parse_protocol(sc.at("protocol").get<std::string>());
  cfg.n = sc.at("n").get<int>();
  cfg.m = sc.at("m").get<int>();
  cfg.t = sc.at("t").get<int>();
  if (!sc.at("d_override").is_null()) cfg.d = sc.at("d_override").get<int>();
  cfg.random_inputs = sc.at("inputs").is_string();
  if (!cfg.random_inputs) cfg.inputs = sc.at("inputs").get<InputMatrix>();
  cfg.strategy.name = sc.at("strategy").at("name").get<std::string>();
  for (const auto& [k, v] : sc.at("strategy").at("params").items()) cfg.strategy.params[k] = v.get<std::string>();
  cfg.trials = sc.at("trials").get<int>();
  if (!sc.at("seed").is_null()) cfg.seed = sc.at("seed").get<std::uint64_t>();
  cfg.check_threshold = sc.at("check_threshold").get<int>();
  cfg.workers = j.at("timing").at("workers").get<int>();

  const Json& st = j.at("stats");
  Stats& s = r.stats;
  s.trials = st.at("trials").get<std::uint64_t>();
  s.correct_sum = rate_from(st.at("correct_sum"));
  s.detection = rate_from(st.at("detection"));
  if (!st.at("attack").is_null()) {
    const Json& a = st.at("attack");
    s.attack_trials = a.at("trials").get<std::uint64_t>();
    s.attack_success = rate_from(a.at("success"));
    s.coordinate_accuracy = rate_from(a.at("coordinate_accuracy"));
    s.silent_success = rate_from(a.at("silent_success"));
  }
  const Json& c = st.at("checks");
  s.checks = CheckTotals{c.at("decoys_checked").get<std::uint64_t>(), c.at("decoy_mismatches").get<std::uint64_t>(),
                         c.at("bell_checks").get<std::uint64_t>(), c.at("bell_mismatches").get<std::uint64_t>()};
  s.transcript_digest = st.at("transcript_digest").get<std::string>();
  s.mean_runtime_us = j.at("timing").at("mean_trial_us").get<double>();

  if (!j.at("efficiency").is_null()) {
    const Json& e = j.at("efficiency");
    EfficiencyReport eff;
    eff.n = e.at("n").get<int>();
    eff.m = e.at("m").get<int>();
    eff.t = e.at("t").get<int>();
    eff.lambda = e.at("lambda").get<int>();
    eff.c = parse_rational(e.at("c").get<std::string>());
    eff.q = parse_rational(e.at("q").get<std::string>());
    eff.b = parse_rational(e.at("b").get<std::string>());
    eff.eta = parse_rational(e.at("eta").get<std::string>());
    eff.b_full = parse_rational(e.at("b_full").get<std::string>());
    eff.eta_full = parse_rational(e.at("eta_full").get<std::string>());
    eff.c_plaintext = parse_rational(e.at("c_plaintext").get<std::string>());
    r.efficiency = eff;
  }
  return r;
}

LoadedReport load_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read report file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_report_json(ss.str());
}

}  // namespace qsum
