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

#include <vector>

#include "qsum/protocols.hpp"
#include "qsum/rng.hpp"
#include "qsum/transcript.hpp"

namespace qsum::testing {

inline InputMatrix random_inputs(int n, int m, int d, RngStream& rng) {
  InputMatrix x(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m)));
  for (auto& row : x)
    for (int& v : row) v = rng.uniform_int(d);
  return x;
}

// Plain column sums, kept separate from the library's helpers.
inline std::vector<int> column_sums(const InputMatrix& x, int d) {
  std::vector<int> out(x.front().size(), 0);
  for (const auto& row : x)
    for (std::size_t j = 0; j < row.size(); ++j) out[j] = (out[j] + row[j]) % d;
  return out;
}

inline const Event* find_event(const Transcript& t, EventKind kind, int author, int peer, int tag = -1) {
  for (const Event& e : t.events())
    if (e.kind == kind && e.author == author && e.peer == peer && (tag < 0 || e.tag == tag)) return &e;
  return nullptr;
}

inline std::vector<const Event*> events_of(const Transcript& t, EventKind kind) {
  std::vector<const Event*> out;
  for (const Event& e : t.events())
    if (e.kind == kind) out.push_back(&e);
  return out;
}

}  // namespace qsum::testing
