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
 * Registry of live quantum objects: encoded Bell pairs and decoy qudits.
 *
 * Every operation names the acting party. A particle can only be touched by
 * its current holder; particles in a quantum channel are held by kChannel
 * and may only be touched by kOutsider. The global state factorizes into
 * independent pairs and decoys because every operation is pair-local.
 */
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsum/qudit.hpp"
#include "qsum/rng.hpp"

namespace qsum {

/// Holder id of particles travelling through a quantum channel.
inline constexpr int kChannel = 0;
/// Actor id of an outside eavesdropper.
inline constexpr int kOutsider = -1;

struct ParticleRef {
  enum class Kind : std::uint8_t { pair_slot, decoy };

  Kind kind = Kind::pair_slot;
  std::uint32_t id = 0;
  int slot = 1;  // 1 or 2; ignored for decoys

  bool is_decoy() const { return kind == Kind::decoy; }
  friend bool operator==(const ParticleRef&, const ParticleRef&) = default;
};

struct DecoyRecord {
  Basis basis;
  int r;
  SingleState state;
  int holder;
  bool consumed = false;
};

struct PairOrigin {
  int party;
  int position;
};

struct ShiftRecord {
  int actor;
  int slot;
  int k;
};

struct PairRecord {
  PairState state;  // stays dense; a measured slot leaves a product state
  PairOrigin origin;
  std::vector<ShiftRecord> shift_log;
  std::array<int, 2> holder;
  std::array<bool, 2> consumed{false, false};
};

class Registry {
 public:
  explicit Registry(Dim d) : d_(d) {}

  Dim dim() const { return d_; }

  /// Registers |phi(0, v)> held entirely by `holder`.
  std::pair<ParticleRef, ParticleRef> create_encoded_pair(int v, PairOrigin origin, int holder);

  /// Uniform over the 2d preparations {|r>, F|r>}.
  ParticleRef create_decoy(RngStream& rng, int holder);

  /// Measures the decoy in its preparation basis; true iff the outcome is r.
  /// Consumes the decoy.
  bool verify_decoy(ParticleRef ref, int actor, RngStream& rng);

  void apply_shift(ParticleRef ref, int k, int actor);

  /// Computational-basis measurement that consumes the particle. The partner
  /// slot keeps its conditional state.
  int measure_particle(ParticleRef ref, int actor, RngStream& rng);

  /// Computational-basis measurement that collapses the particle but leaves
  /// it live, as in measure-and-resend.
  int observe(ParticleRef ref, int actor, RngStream& rng);

  /// Projective Bell measurement on both slots of one pair. The pair
  /// collapses onto the measured Bell state and both slots stay live so the
  /// checked particles can still be measured computationally afterwards.
  BellLabel bell_check(ParticleRef first, ParticleRef second, int actor, RngStream& rng);

  void transfer(ParticleRef ref, int from, int to);

  int holder(ParticleRef ref) const;
  bool is_live(ParticleRef ref) const;

  const PairRecord& pair(ParticleRef ref) const;
  const DecoyRecord& decoy(ParticleRef ref) const;

  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t decoy_count() const { return decoys_.size(); }
  /// Live plus consumed particles; constant under transfers.
  std::size_t particle_count() const { return 2 * pairs_.size() + decoys_.size(); }
  std::size_t consumed_count() const;

 private:
  PairRecord& live_pair(ParticleRef ref, int actor, const char* op);
  DecoyRecord& live_decoy(ParticleRef ref, int actor, const char* op);
  static void check_actor(int holder, int actor, const char* op);

  Dim d_;
  std::vector<PairRecord> pairs_;
  std::vector<DecoyRecord> decoys_;
};

std::string describe(ParticleRef ref);

}  // namespace qsum
