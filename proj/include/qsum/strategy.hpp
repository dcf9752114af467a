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
 * Hook interface through which parties (and an optional outsider) deviate
 * from a protocol. The engine calls a hook only for parties the strategy
 * controls; every quantum action a hook takes goes through the registry and
 * is subject to the same holder checks as honest code.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsum/rng.hpp"
#include "qsum/runtime.hpp"
#include "qsum/transcript.hpp"

namespace qsum {

enum class Protocol { wu, improved3, improved45, improved_multi };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view name);

/// Static shape of one run.
struct ProtocolInfo {
  Protocol protocol = Protocol::wu;
  int n = 3;
  int d = 2;
  int m = 1;
  int t = 0;
  /// Number of transmissions each first-particle sequence makes before it is
  /// measured: 2 for Wu and four/five-party, 1 for three-party, floor(n/2)
  /// for multi-party.
  int hops = 2;

  /// Length of each party's encoded sequence: m, or 2m when inputs are split.
  int payload_length() const;
  /// Number of mask vectors each party draws.
  int mask_groups() const;
  bool uses_shares() const;
};

ProtocolInfo make_protocol_info(Protocol protocol, int n, int m, int t, std::optional<int> d);

/// Everything one party knows privately. Index 0 of every vector is the
/// first position.
struct PartyRecord {
  int index = 0;
  std::vector<int> x;                    // m inputs
  std::vector<int> payload;              // encoded values (inputs or shares)
  std::vector<std::vector<int>> masks;   // masks[g - 1] = r^g
  std::vector<ParticleRef> first;        // own first particles, by position
  std::vector<ParticleRef> second;       // own second particles, by position
  std::vector<int> check_positions;      // own T, 1-based
  int measured_origin = 0;               // whose sequence this party measured
  std::vector<int> measured;             // final outcomes of that sequence
  std::vector<int> check_outcomes;       // measured_origin's checked second particles
  std::vector<int> s2;                   // own second-particle outcomes
  std::vector<int> published;            // P_i
};

/// A first-particle sequence arriving at a party (decoys already removed).
struct SequenceArrival {
  int origin = 0;
  int from = 0;
  int hop = 0;
  std::vector<ParticleRef> particles;
};

class Session;

class PartyContext {
 public:
  PartyContext(Session& session, int party) : session_(&session), party_(party) {}

  int index() const { return party_; }
  const ProtocolInfo& info() const;
  const PartyRecord& record() const;
  const Bulletin& bulletin() const;
  int step() const;

  /// Collapsing computational measurement of a particle this party holds.
  int observe(ParticleRef ref);
  void collude(int to, std::string_view label, std::vector<int> payload);

 private:
  Session* session_;
  int party_;
};

class ChannelContext {
 public:
  ChannelContext(Session& session, int from, int to, int hop, std::span<const ParticleRef> refs)
      : session_(&session), from_(from), to_(to), hop_(hop), refs_(refs) {}

  int from() const { return from_; }
  int to() const { return to_; }
  int hop() const { return hop_; }
  std::span<const ParticleRef> particles() const { return refs_; }
  const ProtocolInfo& info() const;

  /// Measure-and-resend in the computational basis.
  int observe(ParticleRef ref);

 private:
  Session* session_;
  int from_, to_, hop_;
  std::span<const ParticleRef> refs_;
};

class FinishContext {
 public:
  explicit FinishContext(Session& session) : session_(&session) {}

  const ProtocolInfo& info() const;
  const Bulletin& bulletin() const;
  /// Private record of a party the strategy controls; UsageError otherwise.
  const PartyRecord& party(int index) const;
  /// Published P_i of any party.
  const std::vector<int>& published(int index) const;
  std::vector<int> check_positions(int index) const;
  void collude(int from, int to, std::string_view label, std::vector<int> payload);
  RngStream& rng();

 private:
  Session* session_;
};

/// Output of an attacking strategy: a guess of the target's m inputs.
struct AttackGuess {
  std::vector<int> coalition;
  int target = 0;
  std::vector<int> guess;
};

class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;
  /// Parties whose hooks are invoked.
  virtual std::vector<int> coalition() const { return {}; }
  bool controls(int party) const;
  virtual bool has_outsider() const { return false; }
  /// Whether completed runs end with an AttackGuess.
  virtual bool produces_guess() const { return false; }

  /// Called once at the start of a run, before validate(); resets state.
  virtual void bind(const ProtocolInfo&) {}
  /// Throws ConfigError when the strategy cannot run on this protocol shape.
  virtual void validate(const ProtocolInfo&) const {}

  virtual void on_prepare(PartyContext&) {}
  virtual void on_receive_sequence(PartyContext&, const SequenceArrival&) {}
  virtual void on_relay(PartyContext&, const SequenceArrival&, std::vector<int>& /*shifts*/) {}
  virtual void on_publish(PartyContext&, std::vector<int>& /*published*/) {}
  virtual void on_transit(ChannelContext&) {}
  /// Whether a controlled party aborts on mismatching checks of its own
  /// sequence. Colluders that disturbed their own pairs do not.
  virtual bool verifies_own_checks(int /*party*/) const { return true; }
  virtual void on_finish(FinishContext&) {}

  virtual std::optional<AttackGuess> guess() const { return std::nullopt; }
};

}  // namespace qsum
