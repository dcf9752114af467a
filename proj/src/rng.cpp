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

#include "qsum/rng.hpp"

#include <stdexcept>

namespace qsum {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kPruneThreshold = 1e-14;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream * kGolden + 0x632BE59BD9B4E019ULL));
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), key_(mix64(seed)) {}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

int RngStream::uniform_int(int bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_int: bound must be positive");
  const auto range = static_cast<std::uint64_t>(bound);
  // Rejection on the top of the 64-bit range keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return static_cast<int>(x % range);
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::sample_index(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += (w > kPruneThreshold ? w : 0.0);
  if (!(total > 0.0)) throw std::logic_error("sample_index: no branch with positive weight");
  const double u = uniform01() * total;
  double cumulative = 0.0;
  std::size_t last_live = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= kPruneThreshold) continue;
    cumulative += weights[i];
    last_live = i;
    if (u < cumulative) return i;
  }
  return last_live;  // rounding left u just above the final partial sum
}

}  // namespace qsum
