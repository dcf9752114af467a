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

#include "qsum/protocol_math.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qsum/errors.hpp"

namespace qsum {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DomainError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                      std::to_string(b) + ")");
  }
}

}  // namespace

int ring_add(int a, int b, int n) {
  if (n < 1 || a < 1 || a > n || b < 1 || b > n) {
    throw DomainError("ring_add: operands must lie in {1.." + std::to_string(n) + "}");
  }
  return (a + b > n) ? a + b - n : a + b;
}

ShareVector split_shares(std::span<const int> x, int d, RngStream& rng) {
  ShareVector out;
  out.xbar.reserve(2 * x.size());
  for (int value : x) {
    if (value < 0 || value >= d) throw DomainError("split_shares: input outside Z_d");
    const int first = rng.uniform_int(d);
    out.xbar.push_back(first);
    out.xbar.push_back(mod(value - first, d));
  }
  return out;
}

std::vector<int> fold_pairs(std::span<const int> values, int d) {
  if (values.size() % 2 != 0) throw DomainError("fold_pairs: odd length");
  std::vector<int> out(values.size() / 2);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = mod(values[2 * j] + values[2 * j + 1], d);
  return out;
}

std::vector<int> allowed_check_positions(std::span<const std::vector<int>> priors, int m) {
  std::set<int> forbidden;
  for (const auto& set : priors)
    for (int p : set) forbidden.insert(partner_position(p));
  std::vector<int> allowed;
  for (int p = 1; p <= 2 * m; ++p)
    if (!forbidden.contains(p)) allowed.push_back(p);
  return allowed;
}

std::vector<int> select_check_positions(std::span<const std::vector<int>> priors, int t, int m,
                                        RngStream& rng) {
  if (t < 1) throw ConfigError("select_check_positions: t must be >= 1");
  if (m < 1) throw ConfigError("select_check_positions: m must be >= 1");
  const std::vector<int> allowed = allowed_check_positions(priors, m);

  // choices[k] = selectable positions inside share pair k.
  std::vector<std::vector<int>> choices(static_cast<std::size_t>(m));
  for (int p : allowed) choices[static_cast<std::size_t>((p - 1) / 2)].push_back(p);
  std::vector<int> open;
  for (int k = 0; k < m; ++k)
    if (!choices[static_cast<std::size_t>(k)].empty()) open.push_back(k);

  if (static_cast<int>(open.size()) < t) {
    std::string msg = "select_check_positions: t=" + std::to_string(t) + " infeasible, only " +
                      std::to_string(open.size()) + " of " + std::to_string(m) +
                      " share pairs remain selectable; blocking announcements:";
    for (std::size_t i = 0; i < priors.size(); ++i) {
      msg += " #" + std::to_string(i + 1) + "{";
      for (std::size_t j = 0; j < priors[i].size(); ++j)
        msg += (j ? "," : "") + std::to_string(priors[i][j]);
      msg += "}";
    }
    throw ConfigError(msg);
  }

  // Uniform over feasible subsets: a subset is a choice of t open pairs and
  // one allowed position inside each. ways[i][j] counts the completions that
  // take j more pairs from open[i..].
  const std::size_t q = open.size();
  const auto tt = static_cast<std::size_t>(t);
  std::vector<std::vector<double>> ways(q + 1, std::vector<double>(tt + 1, 0.0));
  ways[q][0] = 1.0;
  for (std::size_t i = q; i-- > 0;) {
    const double c = static_cast<double>(choices[static_cast<std::size_t>(open[i])].size());
    for (std::size_t j = 0; j <= tt; ++j) {
      ways[i][j] = ways[i + 1][j] + (j > 0 ? c * ways[i + 1][j - 1] : 0.0);
    }
  }
  std::vector<int> picked;
  std::size_t need = tt;
  for (std::size_t i = 0; i < q && need > 0; ++i) {
    const auto& opts = choices[static_cast<std::size_t>(open[i])];
    const double take = static_cast<double>(opts.size()) * ways[i + 1][need - 1];
    const double weights[2] = {take, ways[i + 1][need]};
    if (rng.sample_index(weights) == 0) {
      picked.push_back(opts[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(opts.size())))]);
      --need;
    }
  }
  return picked;
}

std::vector<int> select_check_positions(const Bulletin& prior, int t, int m, RngStream& rng) {
  std::vector<std::vector<int>> priors;
  for (const Event* e : prior.of_kind(EventKind::positions)) priors.push_back(e->values);
  return select_check_positions(priors, t, m, rng);
}

BellLabel expected_check_label(int xprime, std::span<const int> masks, int d) {
  long long v = xprime;
  for (int r : masks) v += r;
  return {0, mod(v, d)};
}

std::vector<int> compute_pi_wu(std::span<const int> measured, std::span<const int> s2_own,
                               std::span<const int> x_own, std::span<const int> r_own, int d) {
  require_same_length(measured.size(), s2_own.size(), "compute_pi_wu");
  require_same_length(measured.size(), x_own.size(), "compute_pi_wu");
  require_same_length(measured.size(), r_own.size(), "compute_pi_wu");
  std::vector<int> out(measured.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = mod(measured[j] + s2_own[j] + (d - x_own[j]) + (d - r_own[j]), d);
  return out;
}

std::vector<int> compute_pi_improved3(std::span<const int> s1_received,
                                      std::span<const int> s2_own, int d) {
  require_same_length(s1_received.size(), s2_own.size(), "compute_pi_improved3");
  std::vector<int> out(s1_received.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = mod(s1_received[j] + s2_own[j], d);
  return out;
}

std::vector<int> compute_pi_improved45(std::span<const int> measured,
                                       std::span<const int> s2_own, std::span<const int> r_own,
                                       int d) {
  require_same_length(measured.size(), s2_own.size(), "compute_pi_improved45");
  require_same_length(measured.size(), r_own.size(), "compute_pi_improved45");
  std::vector<int> out(measured.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = mod(measured[j] + s2_own[j] + (d - r_own[j]), d);
  return out;
}

std::vector<int> compute_pi_multi(std::span<const int> measured, std::span<const int> s2_own,
                                  std::span<const std::vector<int>> own_masks, int lambda, int d) {
  require_same_length(measured.size(), s2_own.size(), "compute_pi_multi");
  if (lambda < 2 || static_cast<int>(own_masks.size()) != lambda - 2) {
    throw DomainError("compute_pi_multi: expected " + std::to_string(std::max(lambda - 2, 0)) +
                      " mask groups for lambda=" + std::to_string(lambda) + ", got " +
                      std::to_string(own_masks.size()));
  }
  std::vector<int> out(measured.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    long long acc = measured[j] + s2_own[j];
    for (const auto& group : own_masks) {
      require_same_length(group.size(), measured.size(), "compute_pi_multi");
      acc += d - group[j];
    }
    out[j] = mod(acc, d);
  }
  return out;
}

std::vector<int> sum_mod(std::span<const std::vector<int>> rows, int d) {
  if (rows.empty()) return {};
  std::vector<long long> acc(rows.front().size(), 0);
  for (const auto& row : rows) {
    require_same_length(row.size(), acc.size(), "sum_mod");
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += row[j];
  }
  std::vector<int> out(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) out[j] = mod(acc[j], d);
  return out;
}

}  // namespace qsum
