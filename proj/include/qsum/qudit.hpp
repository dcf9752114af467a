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
 * Dense state-vector algebra for single qudits and qudit pairs.
 *
 * Pair amplitudes are stored row-major: index = j1 * d + j2. The generalized
 * Bell state |phi(u,v)> = d^{-1/2} sum_j w^{ju} |j>|v - j> uses
 * w = exp(+2 pi i / d). The Bell measurement is the projective measurement
 * onto that orthonormal basis.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "qsum/rng.hpp"

namespace qsum {

using Complex = std::complex<double>;

inline constexpr double kStateTolerance = 1e-10;

/// Qudit dimension, d >= 2.
class Dim {
 public:
  explicit Dim(int d);
  int value() const { return d_; }
  friend bool operator==(Dim, Dim) = default;

 private:
  int d_;
};

/// Reduce any integer into {0, ..., d-1}.
inline int mod(long long a, int d) {
  const long long r = a % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

/// w^power for w = exp(2 pi i / d), with the exponent reduced mod d first.
Complex root_of_unity(int d, long long power);

enum class Basis { computational, fourier };

struct BellLabel {
  int u = 0;
  int v = 0;
  friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

struct SingleState {
  Dim d;
  std::vector<Complex> amps;

  double norm_squared() const;
};

struct PairState {
  Dim d;
  std::vector<Complex> amps;

  Complex at(int j1, int j2) const { return amps[static_cast<std::size_t>(j1 * d.value() + j2)]; }
  double norm_squared() const;
};

/// d x d matrix, row-major.
struct UnitaryOp {
  Dim d;
  std::vector<Complex> matrix;

  Complex at(int row, int col) const {
    return matrix[static_cast<std::size_t>(row * d.value() + col)];
  }
};

SingleState basis_state(Dim d, int j);
/// F|r>.
SingleState fourier_state(Dim d, int r);
PairState product_state(const SingleState& a, const SingleState& b);

PairState make_bell(Dim d, int u, int v);
UnitaryOp shift_op(Dim d, int k);
UnitaryOp fourier_op(Dim d);
UnitaryOp identity_op(Dim d);
UnitaryOp adjoint(const UnitaryOp& op);
UnitaryOp operator*(const UnitaryOp& a, const UnitaryOp& b);
/// Max entrywise deviation of U * U^dagger from the identity.
double unitarity_error(const UnitaryOp& op);

SingleState apply(const UnitaryOp& op, const SingleState& s);
/// (op x I) p for slot 1, (I x op) p for slot 2.
PairState apply_to_slot(const PairState& p, int slot, const UnitaryOp& op);

Complex inner_product(const SingleState& a, const SingleState& b);
Complex inner_product(const PairState& a, const PairState& b);

/// Equality after dividing out the phase of the first significant amplitude.
bool equal_up_to_global_phase(const PairState& a, const PairState& b,
                              double tol = kStateTolerance);
bool equal_up_to_global_phase(const SingleState& a, const SingleState& b,
                              double tol = kStateTolerance);

/// Marginal Born distribution of one slot.
std::vector<double> slot_probabilities(const PairState& p, int slot);
/// |<phi(u,v)|p>|^2 indexed by u * d + v.
std::vector<double> bell_probabilities(const PairState& p);
/// Born distribution of a single qudit in the given basis.
std::vector<double> single_probabilities(const SingleState& s, Basis basis);

struct SlotMeasurement {
  int outcome;
  SingleState residual;  // normalized conditional state of the other slot
};

SlotMeasurement measure_slot_computational(const PairState& p, int slot, RngStream& rng);

/// In-place variant used by the registry: the pair collapses to
/// |outcome> x residual and keeps its dense representation.
int collapse_slot_computational(PairState& p, int slot, RngStream& rng);

int measure_single(const SingleState& s, Basis basis, RngStream& rng);
/// Measures and leaves s in the post-measurement basis state.
int collapse_single(SingleState& s, Basis basis, RngStream& rng);

BellLabel measure_bell(const PairState& p, RngStream& rng);
/// Projects p onto the sampled Bell state.
BellLabel collapse_bell(PairState& p, RngStream& rng);

}  // namespace qsum
