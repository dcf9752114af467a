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

#include "qsum/runtime.hpp"

#include <string>

#include "qsum/errors.hpp"

namespace qsum {

std::string describe(ParticleRef ref) {
  if (ref.is_decoy()) return "decoy#" + std::to_string(ref.id);
  return "pair#" + std::to_string(ref.id) + "/" + std::to_string(ref.slot);
}

void Registry::check_actor(int holder, int actor, const char* op) {
  const bool allowed = holder == actor || (actor == kOutsider && holder == kChannel);
  if (!allowed) {
    throw UsageError(std::string(op) + ": actor " + std::to_string(actor) +
                     " does not hold the particle (holder " + std::to_string(holder) + ")");
  }
}

PairRecord& Registry::live_pair(ParticleRef ref, int actor, const char* op) {
  if (ref.is_decoy()) throw UsageError(std::string(op) + ": " + describe(ref) + " is a decoy");
  if (ref.id >= pairs_.size() || (ref.slot != 1 && ref.slot != 2))
    throw UsageError(std::string(op) + ": unknown particle " + describe(ref));
  PairRecord& rec = pairs_[ref.id];
  const auto s = static_cast<std::size_t>(ref.slot - 1);
  if (rec.consumed[s]) throw UsageError(std::string(op) + ": " + describe(ref) + " already consumed");
  check_actor(rec.holder[s], actor, op);
  return rec;
}

DecoyRecord& Registry::live_decoy(ParticleRef ref, int actor, const char* op) {
  if (!ref.is_decoy() || ref.id >= decoys_.size())
    throw UsageError(std::string(op) + ": " + describe(ref) + " is not a decoy");
  DecoyRecord& rec = decoys_[ref.id];
  if (rec.consumed) throw UsageError(std::string(op) + ": " + describe(ref) + " already consumed");
  check_actor(rec.holder, actor, op);
  return rec;
}

std::pair<ParticleRef, ParticleRef> Registry::create_encoded_pair(int v, PairOrigin origin,
                                                                   int holder) {
  PairRecord rec{make_bell(d_, 0, v), origin, {}, {holder, holder}};
  pairs_.push_back(std::move(rec));
  const auto id = static_cast<std::uint32_t>(pairs_.size() - 1);
  return {ParticleRef{ParticleRef::Kind::pair_slot, id, 1},
          ParticleRef{ParticleRef::Kind::pair_slot, id, 2}};
}

ParticleRef Registry::create_decoy(RngStream& rng, int holder) {
  const int pick = rng.uniform_int(2 * d_.value());
  const Basis basis = (pick < d_.value()) ? Basis::computational : Basis::fourier;
  const int r = pick % d_.value();
  SingleState state = (basis == Basis::computational) ? basis_state(d_, r) : fourier_state(d_, r);
  decoys_.push_back(DecoyRecord{basis, r, std::move(state), holder});
  return ParticleRef{ParticleRef::Kind::decoy, static_cast<std::uint32_t>(decoys_.size() - 1), 0};
}

bool Registry::verify_decoy(ParticleRef ref, int actor, RngStream& rng) {
  DecoyRecord& rec = live_decoy(ref, actor, "verify_decoy");
  const int outcome = measure_single(rec.state, rec.basis, rng);
  rec.consumed = true;
  return outcome == rec.r;
}

void Registry::apply_shift(ParticleRef ref, int k, int actor) {
  PairRecord& rec = live_pair(ref, actor, "apply_shift");
  const int kk = mod(k, d_.value());
  if (kk != 0) rec.state = apply_to_slot(rec.state, ref.slot, shift_op(d_, kk));
  rec.shift_log.push_back(ShiftRecord{actor, ref.slot, kk});
}

int Registry::measure_particle(ParticleRef ref, int actor, RngStream& rng) {
  if (ref.is_decoy()) {
    DecoyRecord& rec = live_decoy(ref, actor, "measure_particle");
    const int outcome = collapse_single(rec.state, Basis::computational, rng);
    rec.consumed = true;
    return outcome;
  }
  PairRecord& rec = live_pair(ref, actor, "measure_particle");
  const int outcome = collapse_slot_computational(rec.state, ref.slot, rng);
  rec.consumed[static_cast<std::size_t>(ref.slot - 1)] = true;
  return outcome;
}

int Registry::observe(ParticleRef ref, int actor, RngStream& rng) {
  if (ref.is_decoy()) {
    DecoyRecord& rec = live_decoy(ref, actor, "observe");
    return collapse_single(rec.state, Basis::computational, rng);
  }
  PairRecord& rec = live_pair(ref, actor, "observe");
  return collapse_slot_computational(rec.state, ref.slot, rng);
}

BellLabel Registry::bell_check(ParticleRef first, ParticleRef second, int actor, RngStream& rng) {
  if (first.is_decoy() || second.is_decoy() || first.id != second.id || first.slot != 1 ||
      second.slot != 2) {
    throw UsageError("bell_check: refs must be slots 1 and 2 of the same pair (" +
                     describe(first) + ", " + describe(second) + ")");
  }
  live_pair(second, actor, "bell_check");
  PairRecord& rec = live_pair(first, actor, "bell_check");
  return collapse_bell(rec.state, rng);
}

void Registry::transfer(ParticleRef ref, int from, int to) {
  if (ref.is_decoy()) {
    live_decoy(ref, from, "transfer").holder = to;
    return;
  }
  live_pair(ref, from, "transfer").holder[static_cast<std::size_t>(ref.slot - 1)] = to;
}

int Registry::holder(ParticleRef ref) const {
  if (ref.is_decoy()) return decoy(ref).holder;
  return pair(ref).holder[static_cast<std::size_t>(ref.slot - 1)];
}

bool Registry::is_live(ParticleRef ref) const {
  if (ref.is_decoy()) return !decoy(ref).consumed;
  return !pair(ref).consumed[static_cast<std::size_t>(ref.slot - 1)];
}

const PairRecord& Registry::pair(ParticleRef ref) const {
  if (ref.is_decoy() || ref.id >= pairs_.size()) throw UsageError("unknown pair " + describe(ref));
  return pairs_[ref.id];
}

const DecoyRecord& Registry::decoy(ParticleRef ref) const {
  if (!ref.is_decoy() || ref.id >= decoys_.size()) throw UsageError("unknown decoy " + describe(ref));
  return decoys_[ref.id];
}

std::size_t Registry::consumed_count() const {
  std::size_t c = 0;
  for (const auto& p : pairs_) c += static_cast<std::size_t>(p.consumed[0]) + p.consumed[1];
  for (const auto& dr : decoys_) c += dr.consumed ? 1 : 0;
  return c;
}

}  // namespace qsum
