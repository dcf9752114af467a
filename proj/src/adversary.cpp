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

#include "qsum/adversary.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>

#include "qsum/errors.hpp"
#include "qsum/protocol_math.hpp"

namespace qsum {

namespace {

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

/// Turns a solver report into a guess, filling undetermined coordinates
/// uniformly at random.
std::vector<int> guess_from(const InferenceReport& report, FinishContext& ctx) {
  std::vector<int> out;
  for (const auto& c : report.coordinates) out.push_back(c ? *c : ctx.rng().uniform_int(ctx.info().d));
  return out;
}

class Honest final : public Strategy {
 public:
  std::string name() const override { return "honest"; }
};

class CollusiveTwo final : public Strategy {
 public:
  explicit CollusiveTwo(int i) : i_(i) {}

  std::string name() const override { return "collusive_two"; }
  bool produces_guess() const override { return true; }
  std::vector<int> coalition() const override { return {i_, partner_}; }

  void bind(const ProtocolInfo& info) override {
    info_ = info;
    partner_ = ring_step(i_, 2, info.n);
    target_ = ring_step(i_, 1, info.n);
    prev_ = ring_step(i_, -1, info.n);
    s1_own_.clear();
    s1_prev_.clear();
    s1_target_.clear();
    observations_.clear();
    guess_.reset();
  }

  void validate(const ProtocolInfo& info) const override {
    if (info.n < 4) throw ConfigError("collusive_two requires n >= 4, got n=" + std::to_string(info.n));
    if (i_ < 1 || i_ > info.n) throw ConfigError("collusive_two: i outside 1..n");
  }

  void on_prepare(PartyContext& ctx) override {
    if (ctx.index() != i_) return;
    s1_own_ = observe_all(ctx, ctx.record().first, i_, 0);
    ctx.collude(partner_, "s1 of own pairs", s1_own_);
  }

  void on_receive_sequence(PartyContext& ctx, const SequenceArrival& arrival) override {
    if (arrival.hop != 1) return;
    if (ctx.index() == partner_ && arrival.origin == target_) {
      s1_target_ = observe_all(ctx, arrival.particles, target_, 1);
      ctx.collude(i_, "s1 of target", s1_target_);
    } else if (ctx.index() == i_ && arrival.origin == prev_) {
      s1_prev_ = observe_all(ctx, arrival.particles, prev_, 1);
    }
  }

  bool verifies_own_checks(int party) const override { return party != i_; }

  void on_finish(FinishContext& ctx) override {
    const int d = info_.d;
    std::vector<int> guess;
    if (info_.protocol == Protocol::wu) {
      const PartyRecord& a = ctx.party(i_);
      const PartyRecord& c = ctx.party(partner_);
      const std::vector<int>& p_target = ctx.published(target_);
      std::vector<int> xr(info_.m), s2(info_.m);
      for (int k = 0; k < info_.m; ++k) {
        const auto u = static_cast<std::size_t>(k);
        xr[u] = mod(c.measured[u] - s1_own_[u], d);
        s2[u] = mod(p_target[u] - (s1_prev_[u] + a.x[u] + a.masks[0][u]) + xr[u], d);
        guess.push_back(mod(s1_target_[u] + s2[u], d));
      }
      ctx.collude(partner_, i_, "x+r of target", xr);
      ctx.collude(i_, i_, "s2 of target", s2);
    } else {
      guess = guess_from(infer_inputs(ctx, coalition(), target_, observations_), ctx);
    }
    guess_ = AttackGuess{coalition(), target_, guess};
  }

  std::optional<AttackGuess> guess() const override { return guess_; }

 private:
  std::vector<int> observe_all(PartyContext& ctx, const std::vector<ParticleRef>& refs, int origin,
                               int hop) {
    std::vector<int> out;
    for (std::size_t k = 0; k < refs.size(); ++k) {
      out.push_back(ctx.observe(refs[k]));
      observations_.push_back(Observation{origin, static_cast<int>(k) + 1, hop, out.back()});
    }
    return out;
  }

  int i_;
  int partner_ = 0, target_ = 0, prev_ = 0;
  ProtocolInfo info_;
  std::vector<int> s1_own_, s1_prev_, s1_target_;
  std::vector<Observation> observations_;
  std::optional<AttackGuess> guess_;
};

class CollusiveFour final : public Strategy {
 public:
  explicit CollusiveFour(int i) : i_(i) {}

  std::string name() const override { return "collusive_four"; }
  bool produces_guess() const override { return true; }
  std::vector<int> coalition() const override { return members_; }

  void bind(const ProtocolInfo& info) override {
    info_ = info;
    target_ = ring_step(i_, 2, info.n);
    members_ = {i_, ring_step(i_, 1, info.n), ring_step(i_, 3, info.n), ring_step(i_, 4, info.n)};
    guess_.reset();
  }

  void validate(const ProtocolInfo& info) const override {
    if (info.n < 6) throw ConfigError("collusive_four requires n >= 6, got n=" + std::to_string(info.n));
    if (i_ < 1 || i_ > info.n) throw ConfigError("collusive_four: i outside 1..n");
  }

  void on_finish(FinishContext& ctx) override {
    if (info_.protocol != Protocol::wu) {
      guess_ = AttackGuess{members_, target_, guess_from(infer_inputs(ctx, members_, target_, {}), ctx)};
      return;
    }
    const int d = info_.d;
    const int n = info_.n;
    const int t = target_;
    const PartyRecord& prev1 = ctx.party(ring_step(t, -1, n));
    const PartyRecord& prev2 = ctx.party(ring_step(t, -2, n));
    const PartyRecord& next1 = ctx.party(ring_step(t, 1, n));
    const PartyRecord& next2 = ctx.party(ring_step(t, 2, n));
    auto s1_of = [&](const PartyRecord& p, std::size_t k) { return mod(p.x[k] - p.s2[k], d); };
    auto xr_of = [&](const PartyRecord& p, std::size_t k) { return mod(p.x[k] + p.masks[0][k], d); };

    for (const PartyRecord* p : {&prev1, &prev2, &next1, &next2}) {
      std::vector<int> s1, xr;
      for (std::size_t k = 0; k < p->x.size(); ++k) {
        s1.push_back(s1_of(*p, k));
        xr.push_back(xr_of(*p, k));
      }
      ctx.collude(p->index, i_, "s1", s1);
      ctx.collude(p->index, i_, "x+r", xr);
    }

    std::vector<int> guess;
    for (std::size_t k = 0; k < static_cast<std::size_t>(info_.m); ++k) {
      const int xr_t = mod(ctx.published(next1.index)[k] - s1_of(prev1, k) - next1.s2[k] + xr_of(next1, k), d);
      const int s2_t = mod(ctx.published(t)[k] - s1_of(prev2, k) - xr_of(prev1, k) + xr_t, d);
      const int s1_t = mod(ctx.published(next2.index)[k] - xr_of(next1, k) - next2.s2[k] + xr_of(next2, k), d);
      guess.push_back(mod(s1_t + s2_t, d));
    }
    guess_ = AttackGuess{members_, target_, guess};
  }

  std::optional<AttackGuess> guess() const override { return guess_; }

 private:
  int i_;
  int target_ = 0;
  std::vector<int> members_;
  ProtocolInfo info_;
  std::optional<AttackGuess> guess_;
};

class MeasureOnePosition final : public Strategy {
 public:
  MeasureOnePosition(int attacker, int position, int origin)
      : attacker_(attacker), position_(position), origin_param_(origin) {}

  std::string name() const override { return "measure_one_position"; }
  std::vector<int> coalition() const override { return {attacker_}; }

  void bind(const ProtocolInfo& info) override {
    origin_ = origin_param_ != 0 ? origin_param_ : ring_step(attacker_, -1, info.n);
    done_ = false;
  }

  void validate(const ProtocolInfo& info) const override {
    if (!info.uses_shares())
      throw ConfigError("measure_one_position needs improved45 or improved_multi");
    if (attacker_ < 1 || attacker_ > info.n || origin_ < 1 || origin_ > info.n)
      throw ConfigError("measure_one_position: party index outside 1..n");
    if (position_ < 1 || position_ > info.payload_length())
      throw DomainError("measure_one_position: position " + std::to_string(position_) +
                        " outside 1.." + std::to_string(info.payload_length()));
    const int distance = mod(attacker_ - origin_, info.n);
    if (distance < 1 || distance > info.hops)
      throw ConfigError("measure_one_position: attacker never holds the chosen sequence");
  }

  void on_receive_sequence(PartyContext& ctx, const SequenceArrival& arrival) override {
    if (done_ || ctx.index() != attacker_ || arrival.origin != origin_) return;
    ctx.observe(arrival.particles[static_cast<std::size_t>(position_ - 1)]);
    done_ = true;
  }

 private:
  int attacker_, position_, origin_param_;
  int origin_ = 0;
  bool done_ = false;
};

class InterceptResend final : public Strategy {
 public:
  InterceptResend(std::vector<int> senders, std::vector<int> hops)
      : senders_(std::move(senders)), hops_(std::move(hops)) {}

  std::string name() const override { return "intercept_resend"; }
  bool has_outsider() const override { return true; }

  void on_transit(ChannelContext& ctx) override {
    if (!senders_.empty() && !contains(senders_, ctx.from())) return;
    if (!hops_.empty() && !contains(hops_, ctx.hop())) return;
    for (const ParticleRef& ref : ctx.particles()) ctx.observe(ref);
  }

 private:
  std::vector<int> senders_, hops_;
};

class Coalition final : public Strategy {
 public:
  Coalition(int target, std::vector<int> members, CoalitionMeasure measure)
      : target_(target), requested_(std::move(members)), measure_(measure) {}

  std::string name() const override { return "coalition"; }
  bool produces_guess() const override { return true; }
  std::vector<int> coalition() const override { return members_; }

  void bind(const ProtocolInfo& info) override {
    members_ = requested_;
    if (members_.empty()) {
      const int spared = ring_step(target_, info.hops, info.n);
      for (int p = 1; p <= info.n; ++p)
        if (p != target_ && p != spared) members_.push_back(p);
    }
    observed_origins_.clear();
    observations_.clear();
    guess_.reset();
  }

  void validate(const ProtocolInfo& info) const override {
    if (target_ < 1 || target_ > info.n) throw ConfigError("coalition: target outside 1..n");
    if (contains(members_, target_)) throw ConfigError("coalition: target cannot be a member");
    if (std::set<int>(members_.begin(), members_.end()).size() != members_.size())
      throw ConfigError("coalition: repeated member");
  }

  void on_prepare(PartyContext& ctx) override {
    if (measure_ == CoalitionMeasure::none) return;
    observe_all(ctx, ctx.record().first, ctx.index(), 0);
  }

  void on_receive_sequence(PartyContext& ctx, const SequenceArrival& arrival) override {
    if (measure_ != CoalitionMeasure::all || contains(members_, arrival.origin) ||
        contains(observed_origins_, arrival.origin))
      return;
    observed_origins_.push_back(arrival.origin);
    observe_all(ctx, arrival.particles, arrival.origin, arrival.hop);
  }

  bool verifies_own_checks(int) const override { return measure_ == CoalitionMeasure::none; }

  void on_finish(FinishContext& ctx) override {
    guess_ = AttackGuess{members_, target_,
                         guess_from(infer_inputs(ctx, members_, target_, observations_), ctx)};
  }

  std::optional<AttackGuess> guess() const override { return guess_; }

 private:
  void observe_all(PartyContext& ctx, const std::vector<ParticleRef>& refs, int origin, int hop) {
    for (std::size_t k = 0; k < refs.size(); ++k)
      observations_.push_back(Observation{origin, static_cast<int>(k) + 1, hop, ctx.observe(refs[k])});
  }

  int target_;
  std::vector<int> requested_;
  CoalitionMeasure measure_;
  std::vector<int> members_;
  std::vector<int> observed_origins_;
  std::vector<Observation> observations_;
  std::optional<AttackGuess> guess_;
};

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("strategy parameter " + key + ": '" + text + "' is not an integer");
  return v;
}

std::vector<int> parse_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(parse_int(key, item));
  }
  return out;
}

}  // namespace

std::unique_ptr<Strategy> strategy_honest() { return std::make_unique<Honest>(); }
std::unique_ptr<Strategy> strategy_collusive_two(int i) { return std::make_unique<CollusiveTwo>(i); }
std::unique_ptr<Strategy> strategy_collusive_four(int i) { return std::make_unique<CollusiveFour>(i); }

std::unique_ptr<Strategy> strategy_measure_one_position(int attacker, int position, int origin) {
  return std::make_unique<MeasureOnePosition>(attacker, position, origin);
}

std::unique_ptr<Strategy> strategy_intercept_resend(std::vector<int> senders, std::vector<int> hops) {
  return std::make_unique<InterceptResend>(std::move(senders), std::move(hops));
}

std::unique_ptr<Strategy> strategy_coalition(int target, std::vector<int> members,
                                             CoalitionMeasure measure) {
  return std::make_unique<Coalition>(target, std::move(members), measure);
}

std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec, int n) {
  std::map<std::string, std::string> params = spec.params;
  auto take = [&](const std::string& key, const std::string& fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    std::string v = it->second;
    params.erase(it);
    return v;
  };
  auto party = [&](const std::string& key, int fallback) {
    const int v = parse_int(key, take(key, std::to_string(fallback)));
    if (v < 1 || v > n)
      throw ConfigError("strategy parameter " + key + "=" + std::to_string(v) + " outside 1.." +
                        std::to_string(n));
    return v;
  };

  std::unique_ptr<Strategy> out;
  if (spec.name == "honest") {
    out = strategy_honest();
  } else if (spec.name == "collusive_two") {
    out = strategy_collusive_two(party("i", 1));
  } else if (spec.name == "collusive_four") {
    out = strategy_collusive_four(party("i", 1));
  } else if (spec.name == "measure_one_position") {
    const int attacker = party("attacker", 2);
    const int position = parse_int("position", take("position", "1"));
    const int origin = parse_int("origin", take("origin", "0"));
    out = strategy_measure_one_position(attacker, position, origin);
  } else if (spec.name == "intercept_resend") {
    out = strategy_intercept_resend(parse_list("senders", take("senders", "")),
                                    parse_list("hops", take("hops", "")));
  } else if (spec.name == "coalition") {
    const int target = party("target", 1);
    std::vector<int> members = parse_list("members", take("members", ""));
    const std::string measure = take("measure", "all");
    CoalitionMeasure mode;
    if (measure == "none") mode = CoalitionMeasure::none;
    else if (measure == "own") mode = CoalitionMeasure::own;
    else if (measure == "all") mode = CoalitionMeasure::all;
    else throw ConfigError("strategy parameter measure must be none, own or all");
    out = strategy_coalition(target, std::move(members), mode);
  } else {
    throw ConfigError("unknown strategy '" + spec.name +
                      "' (expected honest, collusive_two, collusive_four, measure_one_position, "
                      "intercept_resend or coalition)");
  }
  if (!params.empty())
    throw ConfigError("unknown parameter '" + params.begin()->first + "' for strategy " + spec.name);
  return out;
}

AttackOutcome evaluate_attack(const RunOutcome& run, const std::vector<int>& truth) {
  if (!run.guess) throw UsageError("evaluate_attack: the run recorded no attack guess");
  AttackOutcome out;
  out.coalition = run.guess->coalition;
  out.target = run.guess->target;
  out.guess = run.guess->guess;
  out.truth = truth;
  out.success = out.guess == out.truth;
  out.detected = run.detected;
  return out;
}

}  // namespace qsum
