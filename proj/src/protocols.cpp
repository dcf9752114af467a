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

#include "qsum/protocols.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "qsum/errors.hpp"
#include "session.hpp"

namespace qsum {

// ---------------------------------------------------------------------------
// Shapes

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::wu: return "wu";
    case Protocol::improved3: return "improved3";
    case Protocol::improved45: return "improved45";
    case Protocol::improved_multi: return "improved_multi";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  for (Protocol p : {Protocol::wu, Protocol::improved3, Protocol::improved45,
                     Protocol::improved_multi})
    if (to_string(p) == name) return p;
  throw ConfigError("unknown protocol '" + std::string(name) +
                    "' (expected wu, improved3, improved45 or improved_multi)");
}

bool ProtocolInfo::uses_shares() const {
  return protocol == Protocol::improved45 || protocol == Protocol::improved_multi;
}

int ProtocolInfo::payload_length() const { return uses_shares() ? 2 * m : m; }

int ProtocolInfo::mask_groups() const {
  switch (protocol) {
    case Protocol::wu: return 1;
    case Protocol::improved3: return 0;
    case Protocol::improved45: return 1;
    case Protocol::improved_multi: return hops - 1;
  }
  return 0;
}

ProtocolInfo make_protocol_info(Protocol protocol, int n, int m, int t, std::optional<int> d) {
  ProtocolInfo info;
  info.protocol = protocol;
  info.n = n;
  info.m = m;
  info.t = t;
  info.d = d.value_or(n - 1);
  switch (protocol) {
    case Protocol::wu: info.hops = 2; break;
    case Protocol::improved3: info.hops = 1; break;
    case Protocol::improved45: info.hops = 2; break;
    case Protocol::improved_multi: info.hops = n / 2; break;
  }
  return info;
}

void validate_shape(const ProtocolInfo& info) {
  const std::string name(to_string(info.protocol));
  if (info.m < 1) throw ConfigError(name + ": m must be >= 1");
  if (info.d < 2) throw ConfigError(name + ": d must be >= 2");
  switch (info.protocol) {
    case Protocol::wu:
      if (info.n < 3) throw ConfigError("wu requires n >= 3, got n=" + std::to_string(info.n));
      break;
    case Protocol::improved3:
      if (info.n != 3)
        throw ConfigError("improved3 requires n = 3, got n=" + std::to_string(info.n));
      break;
    case Protocol::improved45:
      if (info.n != 4 && info.n != 5)
        throw ConfigError("improved45 requires n ∈ {4,5}, got n=" + std::to_string(info.n));
      break;
    case Protocol::improved_multi:
      if (info.n < 6)
        throw ConfigError("improved_multi requires n >= 6, got n=" + std::to_string(info.n));
      break;
  }
  if (info.uses_shares() && (info.t < 1 || info.t > info.m)) {
    throw ConfigError(name + ": t=" + std::to_string(info.t) +
                      " infeasible for select_check_positions (need 1 <= t <= m=" +
                      std::to_string(info.m) + ")");
  }
}

std::vector<int> expected_sum(const InputMatrix& inputs, int d) {
  if (inputs.empty()) return {};
  std::vector<int> out(inputs.front().size(), 0);
  for (const auto& row : inputs) {
    if (row.size() != out.size()) throw DomainError("expected_sum: ragged input matrix");
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = mod(out[j] + row[j], d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Session

namespace {

Dim checked_dim(const ProtocolInfo& info) {
  validate_shape(info);
  return Dim(info.d);
}

}  // namespace

Session::Session(const ProtocolInfo& info_, const InputMatrix& inputs, Strategy& strategy_,
                 std::uint64_t seed, const RunOptions& opts_)
    : info(info_),
      opts(opts_),
      reg(checked_dim(info_)),
      transcript(opts_.run_id),
      board(transcript),
      strategy(strategy_),
      adversary_(RngStream::derive(seed, 0xad5e7ULL)) {
  if (static_cast<int>(inputs.size()) != info.n) {
    throw DomainError("expected " + std::to_string(info.n) + " input rows, got " +
                      std::to_string(inputs.size()));
  }
  for (const auto& row : inputs) {
    if (static_cast<int>(row.size()) != info.m)
      throw DomainError("every input row must hold m=" + std::to_string(info.m) + " values");
    for (int v : row)
      if (v < 0 || v >= info.d) throw DomainError("input " + std::to_string(v) + " outside Z_d");
  }
  strategy.bind(info);
  strategy.validate(info);
  for (int c : strategy.coalition())
    if (c < 1 || c > info.n) throw ConfigError("strategy names party " + std::to_string(c) +
                                               " outside 1.." + std::to_string(info.n));

  for (int i = 0; i <= info.n; ++i) rngs_.push_back(RngStream::derive(seed, static_cast<std::uint64_t>(i)));
  parties.resize(static_cast<std::size_t>(info.n + 1));
  for (int i = 1; i <= info.n; ++i) {
    parties[static_cast<std::size_t>(i)].index = i;
    parties[static_cast<std::size_t>(i)].x = inputs[static_cast<std::size_t>(i - 1)];
  }
}

RngStream& Session::rng(int actor) {
  return rngs_.at(static_cast<std::size_t>(actor < 1 ? 0 : actor));
}

void Session::log(int author, EventKind kind, int peer, int tag, std::vector<int> values,
                  std::string note) {
  transcript.record(Event{step, author, kind, peer, tag, std::move(values), std::move(note)});
}

void Session::post(int author, EventKind kind, int peer, int tag, std::vector<int> values,
                   std::string note) {
  board.post(Event{step, author, kind, peer, tag, std::move(values), std::move(note)});
}

std::vector<int> Session::draw_mask(int p) {
  std::vector<int> r(static_cast<std::size_t>(info.payload_length()), 0);
  if (!opts.zero_masks)
    for (int& v : r) v = rng(p).uniform_int(info.d);
  return r;
}

void Session::shift_all(int actor, int origin, int hop, const std::vector<ParticleRef>& refs,
                        const std::vector<int>& shifts) {
  if (shifts.size() != refs.size()) throw UsageError("shift vector length differs from sequence");
  std::vector<int> logged;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const int s = mod(shifts[k], info.d);
    reg.apply_shift(refs[k], s, actor);
    logged.push_back(s);
  }
  log(actor, EventKind::shift, origin, hop, std::move(logged));
}

std::vector<ParticleRef> Session::transmit(int from, int to, int hop,
                                           const std::vector<ParticleRef>& payload, bool decoys) {
  std::vector<ParticleRef> seq;
  std::vector<int> decoy_at;
  if (decoys) {
    const int len = static_cast<int>(payload.size());
    std::vector<int> order(static_cast<std::size_t>(2 * len));
    for (int k = 0; k < 2 * len; ++k) order[static_cast<std::size_t>(k)] = k;
    for (int k = 2 * len - 1; k > 0; --k)
      std::swap(order[static_cast<std::size_t>(k)],
                order[static_cast<std::size_t>(rng(from).uniform_int(k + 1))]);
    decoy_at.assign(order.begin(), order.begin() + len);
    std::sort(decoy_at.begin(), decoy_at.end());
    std::size_t next_payload = 0;
    std::size_t next_decoy = 0;
    for (int k = 0; k < 2 * len; ++k) {
      if (next_decoy < decoy_at.size() && decoy_at[next_decoy] == k) {
        seq.push_back(reg.create_decoy(rng(from), from));
        ++next_decoy;
      } else {
        seq.push_back(payload[next_payload++]);
      }
    }
    log(from, EventKind::decoy_prepare, to, hop, decoy_at);
  } else {
    seq = payload;
  }

  log(from, EventKind::send, to, hop, {static_cast<int>(seq.size())});
  for (const ParticleRef& ref : seq) reg.transfer(ref, from, kChannel);
  if (strategy.has_outsider()) {
    ChannelContext ctx(*this, from, to, hop, seq);
    strategy.on_transit(ctx);
  }
  for (const ParticleRef& ref : seq) reg.transfer(ref, kChannel, to);
  log(to, EventKind::deliver, from, hop);

  if (!decoys) return seq;

  int mismatches = 0;
  std::vector<ParticleRef> out;
  for (const ParticleRef& ref : seq) {
    if (ref.is_decoy()) {
      if (!reg.verify_decoy(ref, to, rng(to))) ++mismatches;
    } else {
      out.push_back(ref);
    }
  }
  checks.decoys_checked += static_cast<int>(decoy_at.size());
  checks.decoy_mismatches += mismatches;
  log(to, EventKind::decoy_check, from, hop, {static_cast<int>(decoy_at.size()), mismatches});
  if (mismatches > opts.check_threshold) {
    throw Abort{"decoy check failed on hop " + std::to_string(hop) + " from " + author_name(from) +
                " to " + author_name(to) + ": " + std::to_string(mismatches) + " mismatches"};
  }
  return out;
}

RunOutcome Session::finish(std::optional<std::vector<int>> sum, std::string abort_reason) {
  RunOutcome out;
  out.info = info;
  out.detected = !sum.has_value();
  out.abort_reason = std::move(abort_reason);
  if (sum) {
    log(kSystem, EventKind::sum, 0, 0, *sum);
    for (int i = 1; i <= info.n; ++i) out.published.push_back(party(i).published);
  } else {
    log(kSystem, EventKind::abort, 0, 0, {}, out.abort_reason);
  }
  out.sum = std::move(sum);
  out.checks = checks;
  out.guess = strategy.guess();
  if (out.guess && !out.detected) {
    const AttackGuess& g = *out.guess;
    if (g.target < 1 || g.target > info.n) throw UsageError("attack guess names no valid target");
    AttackOutcome a;
    a.coalition = g.coalition;
    a.target = g.target;
    a.guess = g.guess;
    a.truth = party(g.target).x;
    a.success = a.guess == a.truth;
    a.detected = false;
    out.attack_report = std::move(a);
  }
  out.transcript = std::move(transcript);
  return out;
}

// ---------------------------------------------------------------------------
// Contexts

const ProtocolInfo& PartyContext::info() const { return session_->info; }
const PartyRecord& PartyContext::record() const { return session_->party(party_); }
const Bulletin& PartyContext::bulletin() const { return session_->board; }
int PartyContext::step() const { return session_->step; }

int PartyContext::observe(ParticleRef ref) {
  const int v = session_->reg.observe(ref, party_, session_->rng(party_));
  if (ref.is_decoy()) {
    session_->log(party_, EventKind::observe, 0, 0, {-1, v});
  } else {
    const PairRecord& pr = session_->reg.pair(ref);
    session_->log(party_, EventKind::observe, pr.origin.party, ref.slot, {pr.origin.position, v});
  }
  return v;
}

void PartyContext::collude(int to, std::string_view label, std::vector<int> payload) {
  session_->log(party_, EventKind::collusion, to, 0, std::move(payload), std::string(label));
}

const ProtocolInfo& ChannelContext::info() const { return session_->info; }

int ChannelContext::observe(ParticleRef ref) {
  const int v = session_->reg.observe(ref, kOutsider, session_->rng(kOutsider));
  session_->log(kOutsider, EventKind::observe, from_, hop_, {v});
  return v;
}

const ProtocolInfo& FinishContext::info() const { return session_->info; }
const Bulletin& FinishContext::bulletin() const { return session_->board; }

const PartyRecord& FinishContext::party(int index) const {
  if (!session_->strategy.controls(index))
    throw UsageError("strategy asked for the private record of uncontrolled party " +
                     author_name(index));
  return session_->party(index);
}

const std::vector<int>& FinishContext::published(int index) const {
  return session_->party(index).published;
}

std::vector<int> FinishContext::check_positions(int index) const {
  return session_->party(index).check_positions;
}

void FinishContext::collude(int from, int to, std::string_view label, std::vector<int> payload) {
  if (!session_->strategy.controls(from))
    throw UsageError("collusion message from uncontrolled party " + author_name(from));
  session_->log(from, EventKind::collusion, to, 0, std::move(payload), std::string(label));
}

RngStream& FinishContext::rng() { return session_->adversary_rng(); }

bool Strategy::controls(int party) const {
  const auto c = coalition();
  return std::find(c.begin(), c.end(), party) != c.end();
}

// ---------------------------------------------------------------------------
// Protocol bodies

namespace {

template <typename Body>
RunOutcome execute(Session& s, Body body) {
  try {
    std::vector<int> sum = body();
    s.step = 99;
    FinishContext fin(s);
    s.strategy.on_finish(fin);
    return s.finish(std::move(sum), {});
  } catch (const Abort& a) {
    return s.finish(std::nullopt, a.reason);
  }
}

void prepare_pairs(Session& s, int i) {
  PartyRecord& p = s.party(i);
  for (std::size_t k = 0; k < p.payload.size(); ++k) {
    auto [first, second] =
        s.reg.create_encoded_pair(p.payload[k], PairOrigin{i, static_cast<int>(k) + 1}, i);
    p.first.push_back(first);
    p.second.push_back(second);
  }
  s.log(i, EventKind::prepare, i, 0, p.payload);
}

std::vector<int> measure_all(Session& s, int actor, int origin, int slot,
                             const std::vector<ParticleRef>& refs) {
  std::vector<int> out;
  for (const ParticleRef& ref : refs) out.push_back(s.reg.measure_particle(ref, actor, s.rng(actor)));
  s.log(actor, EventKind::measure, origin, slot, out);
  return out;
}

void publish_all(Session& s, std::vector<std::vector<int>> published) {
  for (int q = 1; q <= s.info.n; ++q) {
    PartyRecord& p = s.party(q);
    if (s.strategy.controls(q)) {
      PartyContext ctx(s, q);
      s.strategy.on_publish(ctx, published[static_cast<std::size_t>(q)]);
    }
    p.published = published[static_cast<std::size_t>(q)];
  }
  for (int q = 1; q <= s.info.n; ++q) s.post(q, EventKind::publish, 0, 0, s.party(q).published);
}

std::vector<int> total(Session& s) {
  std::vector<std::vector<int>> rows;
  for (int q = 1; q <= s.info.n; ++q) rows.push_back(s.party(q).published);
  return sum_mod(rows, s.info.d);
}

void arrive(Session& s, int receiver, const SequenceArrival& arrival) {
  if (!s.strategy.controls(receiver)) return;
  PartyContext ctx(s, receiver);
  s.strategy.on_receive_sequence(ctx, arrival);
}

std::vector<int> wu_body(Session& s) {
  const int n = s.info.n;
  const int d = s.info.d;
  std::vector<std::vector<ParticleRef>> seq(static_cast<std::size_t>(n + 1));

  s.step = 1;
  for (int i = 1; i <= n; ++i) {
    PartyRecord& p = s.party(i);
    p.payload = p.x;
    prepare_pairs(s, i);
    p.masks = {s.draw_mask(i)};
    if (s.strategy.controls(i)) {
      PartyContext ctx(s, i);
      s.strategy.on_prepare(ctx);
    }
  }

  s.step = 2;
  for (int i = 1; i <= n; ++i)
    seq[static_cast<std::size_t>(i)] = s.transmit(i, s.next(i, 1), 1, s.party(i).first, true);

  s.step = 4;
  for (int i = 1; i <= n; ++i) {
    const int relay = s.next(i, 1);
    auto& refs = seq[static_cast<std::size_t>(i)];
    const SequenceArrival arrival{i, i, 1, refs};
    arrive(s, relay, arrival);
    const PartyRecord& rp = s.party(relay);
    std::vector<int> shifts(rp.x.size());
    for (std::size_t k = 0; k < shifts.size(); ++k) shifts[k] = mod(rp.x[k] + rp.masks[0][k], d);
    if (s.strategy.controls(relay)) {
      PartyContext ctx(s, relay);
      s.strategy.on_relay(ctx, arrival, shifts);
    }
    s.shift_all(relay, i, 1, refs, shifts);
    refs = s.transmit(relay, s.next(i, 2), 2, refs, true);
  }

  s.step = 6;
  std::vector<std::vector<int>> published(static_cast<std::size_t>(n + 1));
  for (int q = 1; q <= n; ++q) {
    const int origin = s.next(q, -2);
    auto& refs = seq[static_cast<std::size_t>(origin)];
    arrive(s, q, SequenceArrival{origin, s.next(q, -1), 2, refs});
    PartyRecord& p = s.party(q);
    p.measured_origin = origin;
    p.measured = measure_all(s, q, origin, 1, refs);
    p.s2 = measure_all(s, q, q, 2, p.second);
    published[static_cast<std::size_t>(q)] = compute_pi_wu(p.measured, p.s2, p.x, p.masks[0], d);
  }
  publish_all(s, std::move(published));
  return total(s);
}

std::vector<int> improved3_body(Session& s) {
  const int n = s.info.n;
  std::vector<std::vector<ParticleRef>> seq(static_cast<std::size_t>(n + 1));

  s.step = 1;
  for (int i = 1; i <= n; ++i) {
    PartyRecord& p = s.party(i);
    p.payload = p.x;
    prepare_pairs(s, i);
    if (s.strategy.controls(i)) {
      PartyContext ctx(s, i);
      s.strategy.on_prepare(ctx);
    }
  }
  for (int i = 1; i <= n; ++i)
    seq[static_cast<std::size_t>(i)] = s.transmit(i, s.next(i, 1), 1, s.party(i).first, true);

  s.step = 3;
  std::vector<std::vector<int>> published(static_cast<std::size_t>(n + 1));
  for (int q = 1; q <= n; ++q) {
    const int origin = s.next(q, -1);
    auto& refs = seq[static_cast<std::size_t>(origin)];
    arrive(s, q, SequenceArrival{origin, origin, 1, refs});
    PartyRecord& p = s.party(q);
    p.measured_origin = origin;
    p.measured = measure_all(s, q, origin, 1, refs);
    p.s2 = measure_all(s, q, q, 2, p.second);
    published[static_cast<std::size_t>(q)] = compute_pi_improved3(p.measured, p.s2, s.info.d);
  }
  publish_all(s, std::move(published));
  return total(s);
}

/// Shared body of the four/five-party and multi-party protocols.
std::vector<int> chain_body(Session& s) {
  const int n = s.info.n;
  const int d = s.info.d;
  const int hops = s.info.hops;
  const bool multi = s.info.protocol == Protocol::improved_multi;
  std::vector<std::vector<ParticleRef>> seq(static_cast<std::size_t>(n + 1));

  s.step = 1;
  for (int i = 1; i <= n; ++i) {
    PartyRecord& p = s.party(i);
    p.payload = split_shares(p.x, d, s.rng(i)).xbar;
    prepare_pairs(s, i);
    for (int g = 0; g < s.info.mask_groups(); ++g) p.masks.push_back(s.draw_mask(i));
    if (s.strategy.controls(i)) {
      PartyContext ctx(s, i);
      s.strategy.on_prepare(ctx);
    }
    if (multi) {
      std::vector<int> self(p.masks[0].size());
      for (std::size_t k = 0; k < self.size(); ++k) self[k] = mod(d - p.masks[0][k], d);
      s.shift_all(i, i, 0, p.first, self);
    }
  }
  for (int i = 1; i <= n; ++i)
    seq[static_cast<std::size_t>(i)] = s.transmit(i, s.next(i, 1), 1, s.party(i).first, false);

  s.step = 2;
  for (int h = 1; h < hops; ++h) {
    for (int i = 1; i <= n; ++i) {
      const int relay = s.next(i, h);
      auto& refs = seq[static_cast<std::size_t>(i)];
      const SequenceArrival arrival{i, s.next(i, h - 1), h, refs};
      arrive(s, relay, arrival);
      std::vector<int> shifts = s.party(relay).masks[static_cast<std::size_t>(h - 1)];
      if (s.strategy.controls(relay)) {
        PartyContext ctx(s, relay);
        s.strategy.on_relay(ctx, arrival, shifts);
      }
      s.shift_all(relay, i, h, refs, shifts);
      refs = s.transmit(relay, s.next(i, h + 1), h + 1, refs, false);
    }
  }
  for (int i = 1; i <= n; ++i) {
    const int holder = s.next(i, hops);
    arrive(s, holder, SequenceArrival{i, s.next(i, hops - 1), hops, seq[static_cast<std::size_t>(i)]});
    s.post(holder, EventKind::ack, i);
  }

  s.step = 3;
  for (int i = 1; i <= n; ++i) {
    PartyRecord& p = s.party(i);
    std::vector<std::vector<int>> priors;
    for (const Event* e : s.board.of_kind(EventKind::positions)) priors.push_back(e->values);
    p.check_positions = select_check_positions(priors, s.info.t, s.info.m, s.rng(i));
    const std::vector<int> allowed = allowed_check_positions(priors, s.info.m);
    for (int pos : p.check_positions) {
      if (std::find(allowed.begin(), allowed.end(), pos) == allowed.end() ||
          std::find(p.check_positions.begin(), p.check_positions.end(), partner_position(pos)) !=
              p.check_positions.end())
        throw std::logic_error("check positions violate the partner constraint");
    }
    s.post(i, EventKind::positions, 0, 0, p.check_positions);
    std::vector<ParticleRef> checked;
    for (int pos : p.check_positions) checked.push_back(p.second[static_cast<std::size_t>(pos - 1)]);
    s.transmit(i, s.next(i, hops), 0, checked, false);
  }

  s.step = 4;
  for (int i = 1; i <= n; ++i) {
    const PartyRecord& owner = s.party(i);
    for (int g = 1; g < hops; ++g) {
      const int relay = s.next(i, g);
      std::vector<int> disclosed;
      for (int pos : owner.check_positions)
        disclosed.push_back(s.party(relay).masks[static_cast<std::size_t>(g - 1)]
                                [static_cast<std::size_t>(pos - 1)]);
      s.post(relay, EventKind::mask_disclosure, i, g, std::move(disclosed));
    }
    const int holder = s.next(i, hops);
    std::vector<int> labels;
    for (int pos : owner.check_positions) {
      const auto k = static_cast<std::size_t>(pos - 1);
      const BellLabel l = s.reg.bell_check(seq[static_cast<std::size_t>(i)][k], owner.second[k],
                                           holder, s.rng(holder));
      labels.push_back(l.u);
      labels.push_back(l.v);
    }
    s.log(holder, EventKind::bell_measure, i, 0, labels);
    s.post(holder, EventKind::bell_result, i, 0, labels);
    s.checks.bell_checks += static_cast<int>(owner.check_positions.size());
  }
  for (int i = 1; i <= n; ++i) {
    if (s.strategy.controls(i) && !s.strategy.verifies_own_checks(i)) continue;
    const PartyRecord& owner = s.party(i);
    const Event* result = s.board.find(EventKind::bell_result, s.next(i, hops), i);
    int mismatches = 0;
    for (std::size_t j = 0; j < owner.check_positions.size(); ++j) {
      const auto k = static_cast<std::size_t>(owner.check_positions[j] - 1);
      std::vector<int> masks;
      if (multi) masks.push_back(mod(d - owner.masks[0][k], d));
      for (int g = 1; g < hops; ++g)
        masks.push_back(s.board.find(EventKind::mask_disclosure, s.next(i, g), i)->values[j]);
      const BellLabel want = expected_check_label(owner.payload[k], masks, d);
      const BellLabel got{result->values[2 * j], result->values[2 * j + 1]};
      if (!(got == want)) ++mismatches;
    }
    s.checks.bell_mismatches += mismatches;
    s.log(i, EventKind::verify, i, 0, {static_cast<int>(owner.check_positions.size()), mismatches});
    if (mismatches > s.opts.check_threshold) {
      throw Abort{"Bell check of " + author_name(i) + "'s sequence failed: " +
                  std::to_string(mismatches) + " of " +
                  std::to_string(owner.check_positions.size()) + " mismatched"};
    }
  }

  s.step = 5;
  for (int i = 1; i <= n; ++i) {
    const PartyRecord& owner = s.party(i);
    const int holder = s.next(i, hops);
    std::vector<ParticleRef> checked;
    for (int pos : owner.check_positions) checked.push_back(owner.second[static_cast<std::size_t>(pos - 1)]);
    const std::vector<int> outcomes = measure_all(s, holder, i, 2, checked);
    s.log(holder, EventKind::check_result, i, 0, outcomes);
    s.party(holder).check_outcomes = outcomes;
  }
  std::vector<std::vector<int>> published(static_cast<std::size_t>(n + 1));
  for (int q = 1; q <= n; ++q) {
    const int origin = s.next(q, -hops);
    PartyRecord& p = s.party(q);
    p.measured_origin = origin;
    p.measured = measure_all(s, q, origin, 1, seq[static_cast<std::size_t>(origin)]);
    const std::vector<int>& told = s.party(s.next(q, hops)).check_outcomes;
    p.s2.assign(p.payload.size(), 0);
    std::vector<ParticleRef> rest;
    std::vector<std::size_t> rest_at;
    for (std::size_t k = 0; k < p.payload.size(); ++k) {
      const auto it = std::find(p.check_positions.begin(), p.check_positions.end(),
                                static_cast<int>(k) + 1);
      if (it != p.check_positions.end()) {
        p.s2[k] = told[static_cast<std::size_t>(it - p.check_positions.begin())];
      } else {
        rest.push_back(p.second[k]);
        rest_at.push_back(k);
      }
    }
    const std::vector<int> own = measure_all(s, q, q, 2, rest);
    for (std::size_t j = 0; j < own.size(); ++j) p.s2[rest_at[j]] = own[j];
    if (multi) {
      const std::vector<std::vector<int>> later(p.masks.begin() + 1, p.masks.end());
      published[static_cast<std::size_t>(q)] = compute_pi_multi(p.measured, p.s2, later, hops, d);
    } else {
      published[static_cast<std::size_t>(q)] = compute_pi_improved45(p.measured, p.s2, p.masks[0], d);
    }
  }
  publish_all(s, std::move(published));

  s.step = 6;
  return fold_pairs(total(s), d);
}

RunOutcome run(Protocol protocol, int n, int m, int t, const InputMatrix& inputs,
               Strategy& strategy, std::uint64_t seed, const RunOptions& opts) {
  const ProtocolInfo info = make_protocol_info(protocol, n, m, t, opts.d);
  Session s(info, inputs, strategy, seed, opts);
  switch (protocol) {
    case Protocol::wu: return execute(s, [&] { return wu_body(s); });
    case Protocol::improved3: return execute(s, [&] { return improved3_body(s); });
    default: return execute(s, [&] { return chain_body(s); });
  }
}

}  // namespace

RunOutcome run_wu(int n, int m, const InputMatrix& inputs, Strategy& strategy, std::uint64_t seed,
                  const RunOptions& opts) {
  return run(Protocol::wu, n, m, 0, inputs, strategy, seed, opts);
}

RunOutcome run_improved3(int m, const InputMatrix& inputs, Strategy& strategy, std::uint64_t seed,
                         const RunOptions& opts) {
  return run(Protocol::improved3, 3, m, 0, inputs, strategy, seed, opts);
}

RunOutcome run_improved45(int n, int m, int t, const InputMatrix& inputs, Strategy& strategy,
                          std::uint64_t seed, const RunOptions& opts) {
  return run(Protocol::improved45, n, m, t, inputs, strategy, seed, opts);
}

RunOutcome run_improved_multi(int n, int m, int t, const InputMatrix& inputs, Strategy& strategy,
                              std::uint64_t seed, const RunOptions& opts) {
  return run(Protocol::improved_multi, n, m, t, inputs, strategy, seed, opts);
}

RunOutcome run_protocol(Protocol protocol, int n, int m, int t, const InputMatrix& inputs,
                        Strategy& strategy, std::uint64_t seed, const RunOptions& opts) {
  return run(protocol, n, m, t, inputs, strategy, seed, opts);
}

}  // namespace qsum
