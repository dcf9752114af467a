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

#include "qsum/inference.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qsum/errors.hpp"
#include "qsum/protocol_math.hpp"

namespace qsum {

namespace {

std::optional<int> unit_inverse(int a, int d) {
  int t = 0, new_t = 1, r = d, new_r = mod(a, d);
  while (new_r != 0) {
    const int q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) return std::nullopt;
  return mod(t, d);
}

}  // namespace

ModularSystem::ModularSystem(int vars, int d)
    : vars_(vars), d_(d), pivot_row_(static_cast<std::size_t>(vars), -1) {
  if (vars < 0 || d < 2) throw DomainError("ModularSystem: bad shape");
}

void ModularSystem::reduce(std::vector<int>& coef, int& rhs) const {
  for (int v = 0; v < vars_; ++v) {
    const int c = coef[static_cast<std::size_t>(v)];
    const int r = pivot_row_[static_cast<std::size_t>(v)];
    if (c == 0 || r < 0) continue;
    const Row& row = rows_[static_cast<std::size_t>(r)];
    for (int k = 0; k < vars_; ++k)
      coef[static_cast<std::size_t>(k)] =
          mod(coef[static_cast<std::size_t>(k)] - c * row.coef[static_cast<std::size_t>(k)], d_);
    rhs = mod(rhs - c * row.rhs, d_);
  }
}

void ModularSystem::add(const std::vector<std::pair<int, int>>& terms, int rhs) {
  std::vector<int> coef(static_cast<std::size_t>(vars_), 0);
  for (auto [v, c] : terms) {
    if (v < 0 || v >= vars_) throw DomainError("ModularSystem: variable out of range");
    coef[static_cast<std::size_t>(v)] = mod(coef[static_cast<std::size_t>(v)] + c, d_);
  }
  rhs = mod(rhs, d_);
  reduce(coef, rhs);

  int pivot = -1;
  std::optional<int> inv;
  for (int v = 0; v < vars_ && pivot < 0; ++v) {
    if (coef[static_cast<std::size_t>(v)] == 0) continue;
    inv = unit_inverse(coef[static_cast<std::size_t>(v)], d_);
    if (inv) pivot = v;
  }
  if (pivot < 0) {
    const bool all_zero = std::all_of(coef.begin(), coef.end(), [](int c) { return c == 0; });
    if (all_zero && rhs != 0) ++inconsistent_;
    return;
  }
  for (int& c : coef) c = mod(c * *inv, d_);
  rhs = mod(rhs * *inv, d_);

  for (Row& row : rows_) {
    const int c = row.coef[static_cast<std::size_t>(pivot)];
    if (c == 0) continue;
    for (int k = 0; k < vars_; ++k)
      row.coef[static_cast<std::size_t>(k)] =
          mod(row.coef[static_cast<std::size_t>(k)] - c * coef[static_cast<std::size_t>(k)], d_);
    row.rhs = mod(row.rhs - c * rhs, d_);
  }
  pivot_row_[static_cast<std::size_t>(pivot)] = static_cast<int>(rows_.size());
  rows_.push_back(Row{std::move(coef), rhs, pivot});
}

std::optional<int> ModularSystem::evaluate(const std::vector<std::pair<int, int>>& form) const {
  std::vector<int> coef(static_cast<std::size_t>(vars_), 0);
  for (auto [v, c] : form) coef[static_cast<std::size_t>(v)] = mod(coef[static_cast<std::size_t>(v)] + c, d_);
  int value = 0;
  for (int v = 0; v < vars_; ++v) {
    const int c = coef[static_cast<std::size_t>(v)];
    const int r = pivot_row_[static_cast<std::size_t>(v)];
    if (c == 0 || r < 0) continue;
    const Row& row = rows_[static_cast<std::size_t>(r)];
    for (int k = 0; k < vars_; ++k)
      coef[static_cast<std::size_t>(k)] =
          mod(coef[static_cast<std::size_t>(k)] - c * row.coef[static_cast<std::size_t>(k)], d_);
    value = mod(value + c * row.rhs, d_);
  }
  if (std::any_of(coef.begin(), coef.end(), [](int c) { return c != 0; })) return std::nullopt;
  return value;
}

// ---------------------------------------------------------------------------

namespace {

using Terms = std::vector<std::pair<int, int>>;

/// Variable layout and the protocol's linear relations for one input
/// coordinate.
class Model {
 public:
  Model(const ProtocolInfo& info, int coordinate)
      : info_(info),
        width_(info.uses_shares() ? 2 : 1),
        groups_(info.mask_groups()),
        first_(info.uses_shares() ? 2 * coordinate : coordinate) {}

  int vars() const { return info_.n * width_ * fields(); }
  int width() const { return width_; }
  /// 0-based payload index of slot a.
  int position(int a) const { return first_ + a; }
  /// Slot of a 0-based payload index, or -1 if outside this coordinate.
  int slot_of(int k) const { return (k >= first_ && k < first_ + width_) ? k - first_ : -1; }

  int xs(int i, int a) const { return base(i, a) + 0; }
  int s1(int i, int a) const { return base(i, a) + 1; }
  int s2(int i, int a) const { return base(i, a) + 2; }
  int mask(int g, int i, int a) const { return base(i, a) + 3 + (g - 1); }

  int step(int i, int k) const { return ring_step(i, k, info_.n); }

  /// Shifts applied to origin o's first particle before `hop` transmissions
  /// completed and before the relay at that hop acted.
  Terms shifts_before(int o, int a, int hop) const {
    Terms t;
    if (hop <= 0) return t;
    if (info_.protocol == Protocol::improved_multi) t.emplace_back(mask(1, o, a), -1);
    for (int g = 1; g < hop && g < info_.hops; ++g) {
      const int relay = step(o, g);
      switch (info_.protocol) {
        case Protocol::wu:
          t.emplace_back(xs(relay, a), 1);
          t.emplace_back(mask(1, relay, a), 1);
          break;
        case Protocol::improved3: break;
        case Protocol::improved45: t.emplace_back(mask(1, relay, a), 1); break;
        case Protocol::improved_multi: t.emplace_back(mask(g, relay, a), 1); break;
      }
    }
    return t;
  }
  Terms chain(int o, int a) const { return shifts_before(o, a, info_.hops); }

  /// Terms P_q adds to M_q + s2_q.
  Terms self_terms(int q, int a) const {
    Terms t;
    switch (info_.protocol) {
      case Protocol::wu:
        t.emplace_back(xs(q, a), -1);
        t.emplace_back(mask(1, q, a), -1);
        break;
      case Protocol::improved3: break;
      case Protocol::improved45: t.emplace_back(mask(1, q, a), -1); break;
      case Protocol::improved_multi:
        for (int g = 2; g < info_.hops; ++g) t.emplace_back(mask(g, q, a), -1);
        break;
    }
    return t;
  }

 private:
  int fields() const { return 3 + groups_; }
  int base(int i, int a) const { return ((i - 1) * width_ + a) * fields(); }

  const ProtocolInfo& info_;
  int width_;
  int groups_;
  int first_;
};

Terms concat(Terms a, const Terms& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

InferenceReport infer_inputs(const FinishContext& ctx, const std::vector<int>& members, int target,
                             const std::vector<Observation>& observations) {
  const ProtocolInfo& info = ctx.info();
  const int n = info.n;
  const int d = info.d;
  const int hops = info.hops;
  InferenceReport report;

  std::vector<std::vector<int>> checked(static_cast<std::size_t>(n + 1));
  for (int i = 1; i <= n; ++i) checked[static_cast<std::size_t>(i)] = ctx.check_positions(i);
  auto is_checked = [&](int o, int k) { return contains(checked[static_cast<std::size_t>(o)], k + 1); };

  for (int j = 0; j < info.m; ++j) {
    const Model model(info, j);
    ModularSystem sys(model.vars(), d);

    for (int i = 1; i <= n; ++i) {
      const bool member = contains(members, i);
      const PartyRecord* rec = member ? &ctx.party(i) : nullptr;
      const int origin = ring_step(i, -hops, n);
      for (int a = 0; a < model.width(); ++a) {
        const int k = model.position(a);
        const auto ku = static_cast<std::size_t>(k);

        if (!(member && is_checked(i, k)))
          sys.add({{model.s1(i, a), 1}, {model.s2(i, a), 1}, {model.xs(i, a), -1}}, 0);

        sys.add(concat(concat({{model.s1(origin, a), 1}, {model.s2(i, a), 1}}, model.chain(origin, a)),
                       model.self_terms(i, a)),
                ctx.published(i)[ku]);

        if (is_checked(i, k)) {
          const auto idx = static_cast<std::size_t>(
              std::find(checked[static_cast<std::size_t>(i)].begin(),
                        checked[static_cast<std::size_t>(i)].end(), k + 1) -
              checked[static_cast<std::size_t>(i)].begin());
          for (int g = 1; g < hops && info.uses_shares(); ++g) {
            const int relay = ring_step(i, g, n);
            if (const Event* e = ctx.bulletin().find(EventKind::mask_disclosure, relay, i))
              sys.add({{model.mask(g, relay, a), 1}}, e->values[idx]);
          }
          if (!member) {
            if (const Event* e = ctx.bulletin().find(EventKind::bell_result, ring_step(i, hops, n), i))
              sys.add(concat({{model.xs(i, a), 1}}, model.chain(i, a)), e->values[2 * idx + 1]);
          }
        }

        if (!member) continue;
        sys.add({{model.xs(i, a), 1}}, rec->payload[ku]);
        sys.add({{model.s2(i, a), 1}}, rec->s2[ku]);
        for (int g = 1; g <= info.mask_groups(); ++g)
          sys.add({{model.mask(g, i, a), 1}}, rec->masks[static_cast<std::size_t>(g - 1)][ku]);
        sys.add(concat({{model.s1(rec->measured_origin, a), 1}}, model.chain(rec->measured_origin, a)),
                rec->measured[ku]);
        const auto& oc = checked[static_cast<std::size_t>(rec->measured_origin)];
        for (std::size_t c = 0; c < oc.size() && c < rec->check_outcomes.size(); ++c)
          if (oc[c] == k + 1) sys.add({{model.s2(rec->measured_origin, a), 1}}, rec->check_outcomes[c]);
      }
    }

    for (const Observation& ob : observations) {
      const int a = model.slot_of(ob.position - 1);
      if (a < 0 || is_checked(ob.origin, ob.position - 1)) continue;
      sys.add(concat({{model.s1(ob.origin, a), 1}}, model.shifts_before(ob.origin, a, ob.hop)), ob.value);
    }

    Terms form;
    for (int a = 0; a < model.width(); ++a) form.emplace_back(model.xs(target, a), 1);
    report.coordinates.push_back(sys.evaluate(form));
    report.inconsistencies += sys.inconsistencies();
  }
  return report;
}

}  // namespace qsum
