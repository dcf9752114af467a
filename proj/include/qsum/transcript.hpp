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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsum {

/// Author id for events emitted by the simulation harness itself.
inline constexpr int kSystem = -2;

enum class EventKind : std::uint8_t {
  // Quantum events.
  prepare,        // values: encoded v per position
  decoy_prepare,  // values: decoy positions inside the outgoing sequence
  shift,          // peer: origin party, tag: hop, values: k per position
  send,           // peer: receiver, tag: hop, values: [sequence length]
  deliver,        // peer: sender, tag: hop
  decoy_check,    // peer: preparer, values: [checked, mismatches]
  measure,        // peer: origin party (0 for own), tag: slot, values: outcomes
  bell_measure,   // peer: owner, values: u0, v0, u1, v1, ...
  observe,        // peer: origin party, tag: slot, values: position, outcome, ...
  // Classical events.
  ack,
  positions,
  mask_disclosure,  // peer: owner of the checked sequence, tag: mask group
  bell_result,      // peer: owner, values: u0, v0, ...
  check_result,     // peer: owner, values: s2 of checked positions (private)
  publish,          // values: P_i
  collusion,        // peer: receiving colluder, note: label
  verify,           // peer: checked party, values: [checks, mismatches]
  abort,
  sum,
};

std::string_view to_string(EventKind kind);
bool is_quantum(EventKind kind);

struct Event {
  int step = 0;
  int author = kSystem;
  EventKind kind = EventKind::abort;
  int peer = 0;
  int tag = 0;
  std::vector<int> values;
  std::string note;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Ordered log of one protocol run.
class Transcript {
 public:
  explicit Transcript(std::string run_id = "run") : run_id_(std::move(run_id)) {}

  const std::string& run_id() const { return run_id_; }
  const std::vector<Event>& events() const { return events_; }

  void record(Event e) { events_.push_back(std::move(e)); }

  std::vector<Event> filter(bool (*pred)(EventKind)) const;

  /// One JSON object per line with keys run_id, step, author, kind, payload
  /// in that order.
  std::string to_jsonl() const;

 private:
  std::string run_id_;
  std::vector<Event> events_;
};

std::string author_name(int author);

/// Public, append-only announcement board. Every post is mirrored into the
/// transcript so the two never disagree.
class Bulletin {
 public:
  explicit Bulletin(Transcript& transcript) : transcript_(&transcript) {}

  const Event& post(Event e);
  const std::vector<Event>& entries() const { return entries_; }

  std::vector<const Event*> of_kind(EventKind kind) const;
  /// Latest entry of the given kind written by `author` about `peer`.
  const Event* find(EventKind kind, int author, int peer) const;

 private:
  Transcript* transcript_;
  std::vector<Event> entries_;
};

}  // namespace qsum
