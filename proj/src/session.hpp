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
#include <optional>
#include <string>
#include <vector>

#include "qsum/protocol_math.hpp"
#include "qsum/protocols.hpp"
#include "qsum/runtime.hpp"
#include "qsum/strategy.hpp"
#include "qsum/transcript.hpp"

namespace qsum {

/// Thrown inside a run when a check fails; caught by the run wrapper.
struct Abort {
  std::string reason;
};

/// Mutable state of one protocol run.
class Session {
 public:
  Session(const ProtocolInfo& info, const InputMatrix& inputs, Strategy& strategy,
          std::uint64_t seed, const RunOptions& opts);
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const ProtocolInfo info;
  const RunOptions opts;
  Registry reg;
  Transcript transcript;
  Bulletin board;
  Strategy& strategy;
  std::vector<PartyRecord> parties;  // parties[0] unused
  CheckStats checks;
  int step = 0;

  RngStream& rng(int actor);
  RngStream& adversary_rng() { return adversary_; }
  PartyRecord& party(int i) { return parties.at(static_cast<std::size_t>(i)); }
  int next(int i, int k) const { return ring_step(i, k, info.n); }

  void log(int author, EventKind kind, int peer = 0, int tag = 0, std::vector<int> values = {},
           std::string note = {});
  void post(int author, EventKind kind, int peer = 0, int tag = 0, std::vector<int> values = {},
            std::string note = {});

  std::vector<int> draw_mask(int party);
  void shift_all(int actor, int origin, int hop, const std::vector<ParticleRef>& refs,
                 const std::vector<int>& shifts);

  /// Sends `payload` from `from` to `to`, optionally interleaved with as
  /// many decoys, lets an outsider act on the channel, then runs the decoy
  /// check at the receiver. Returns the payload refs in order.
  std::vector<ParticleRef> transmit(int from, int to, int hop, const std::vector<ParticleRef>& payload,
                                    bool decoys);

  RunOutcome finish(std::optional<std::vector<int>> sum, std::string abort_reason);

 private:
  std::vector<RngStream> rngs_;
  RngStream adversary_;
};

}  // namespace qsum
