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
#include <span>

namespace qsum {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of an independent sub-stream keyed by (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/**
 * Counter-based random stream. Output k is mix64(key + k * golden), so the
 * sequence depends only on the seed and the number of draws already taken.
 * Every sampler below is implemented here rather than through <random>
 * distributions, whose outputs differ between standard libraries.
 */
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0);

  static RngStream derive(std::uint64_t seed, std::uint64_t stream) {
    return RngStream(derive_seed(seed, stream));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();

  /// Uniform integer in [0, bound). bound must be positive.
  int uniform_int(int bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Inverse-CDF draw from (possibly unnormalized) non-negative weights.
  /// Entries at or below 1e-14 are never returned.
  std::size_t sample_index(std::span<const double> weights);

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qsum
