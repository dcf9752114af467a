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
 * Classical arithmetic shared by the summation protocols: ring indices,
 * share splitting, check-position selection, expected check labels and the
 * published P_i vectors.
 */
#pragma once

#include <span>
#include <vector>

#include "qsum/qudit.hpp"
#include "qsum/rng.hpp"
#include "qsum/transcript.hpp"

namespace qsum {

/// a (+) b on party indices 1..n: a + b - n if a + b > n, else a + b.
int ring_add(int a, int b, int n);

/// Party `offset` steps after `i` on the ring, for any integer offset.
inline int ring_step(int i, int offset, int n) { return mod(i - 1 + offset, n) + 1; }

struct ShareVector {
  std::vector<int> xbar;  // length 2m; xbar[2j] + xbar[2j+1] = x[j] (mod d)
};

ShareVector split_shares(std::span<const int> x, int d, RngStream& rng);

/// out[j] = (T[2j] + T[2j+1]) mod d.
std::vector<int> fold_pairs(std::span<const int> values, int d);

/// Check positions are 1-based indices into a length-2m share sequence.
/// Positions 2k-1 and 2k are partners.
inline int partner_position(int pos) { return (pos % 2 == 1) ? pos + 1 : pos - 1; }

/// Positions in {1..2m} that the next selector may still take, given every
/// prior announcement: the partner of any prior choice is forbidden.
std::vector<int> allowed_check_positions(std::span<const std::vector<int>> priors, int m);

/**
 * Draws t distinct positions uniformly from the feasible sets: no two
 * positions form a partner pair, and no position is the partner of any
 * position in `priors`. Throws ConfigError when fewer than t share pairs
 * remain selectable.
 */
std::vector<int> select_check_positions(std::span<const std::vector<int>> priors, int t, int m,
                                        RngStream& rng);

/// Same, reading the priors from every `positions` announcement on the board.
std::vector<int> select_check_positions(const Bulletin& prior, int t, int m, RngStream& rng);

/// (0, (xprime + sum masks) mod d).
BellLabel expected_check_label(int xprime, std::span<const int> masks, int d);

/// Wu: measured + s2 + (d - x) + (d - r), componentwise mod d.
std::vector<int> compute_pi_wu(std::span<const int> measured, std::span<const int> s2_own,
                               std::span<const int> x_own, std::span<const int> r_own, int d);

/// Three-party: s1_received + s2_own mod d (d = 2 in the protocol).
std::vector<int> compute_pi_improved3(std::span<const int> s1_received,
                                      std::span<const int> s2_own, int d = 2);

/// Four/five-party: measured + s2 + (d - r_own).
std::vector<int> compute_pi_improved45(std::span<const int> measured,
                                       std::span<const int> s2_own, std::span<const int> r_own,
                                       int d);

/// Multi-party: measured + s2 + sum_{g=2}^{lambda-1} (d - r^g). `own_masks`
/// holds groups 2..lambda-1, i.e. lambda - 2 vectors.
std::vector<int> compute_pi_multi(std::span<const int> measured, std::span<const int> s2_own,
                                  std::span<const std::vector<int>> own_masks, int lambda, int d);

/// Componentwise sum of vectors mod d.
std::vector<int> sum_mod(std::span<const std::vector<int>> rows, int d);

}  // namespace qsum
