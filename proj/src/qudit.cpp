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

#include "qsum/qudit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsum/errors.hpp"

namespace qsum {

namespace {

constexpr double kPrune = 1e-14;

void require_label(Dim d, int value, const char* what) {
  if (value < 0 || value >= d.value()) {
    throw DomainError(std::string(what) + " = " + std::to_string(value) +
                      " outside [0, " + std::to_string(d.value() - 1) + "]");
  }
}

void require_slot(int slot) {
  if (slot != 1 && slot != 2) throw DomainError("slot must be 1 or 2");
}

void require_same_dim(Dim a, Dim b) {
  if (!(a == b)) {
    throw DomainError("dimension mismatch: " + std::to_string(a.value()) + " vs " +
                      std::to_string(b.value()));
  }
}

template <class Amps>
double sum_norm(const Amps& amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

template <class Amps>
bool phase_aligned_equal(const Amps& a, const Amps& b, double tol) {
  if (a.size() != b.size()) return false;
  std::size_t pivot = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > 1e-6) {
      pivot = i;
      break;
    }
  }
  if (pivot == a.size()) {
    for (std::size_t i = 0; i < b.size(); ++i)
      if (std::abs(b[i]) > tol) return false;
    return true;
  }
  if (std::abs(b[pivot]) < 1e-12) return false;
  const Complex pa = a[pivot] / std::abs(a[pivot]);
  const Complex pb = b[pivot] / std::abs(b[pivot]);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] / pa - b[i] / pb) > tol) return false;
  }
  return true;
}

Complex bell_overlap(const PairState& p, int u, int v) {
  // <phi(u,v)|p> = d^{-1/2} sum_j w^{-ju} p[j, v - j]
  const int d = p.d.value();
  Complex acc{0.0, 0.0};
  for (int j = 0; j < d; ++j) acc += root_of_unity(d, -1LL * j * u) * p.at(j, mod(v - j, d));
  return acc / std::sqrt(static_cast<double>(d));
}

}  // namespace

Dim::Dim(int d) : d_(d) {
  if (d < 2) throw DomainError("qudit dimension must be >= 2, got " + std::to_string(d));
}

Complex root_of_unity(int d, long long power) {
  const int e = mod(power, d);
  if (e == 0) return {1.0, 0.0};
  if (2 * e == d) return {-1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * e / d;
  return {std::cos(angle), std::sin(angle)};
}

double SingleState::norm_squared() const { return sum_norm(amps); }
double PairState::norm_squared() const { return sum_norm(amps); }

SingleState basis_state(Dim d, int j) {
  require_label(d, j, "basis index");
  SingleState s{d, std::vector<Complex>(static_cast<std::size_t>(d.value()))};
  s.amps[static_cast<std::size_t>(j)] = 1.0;
  return s;
}

SingleState fourier_state(Dim d, int r) {
  require_label(d, r, "fourier index");
  return apply(fourier_op(d), basis_state(d, r));
}

PairState product_state(const SingleState& a, const SingleState& b) {
  require_same_dim(a.d, b.d);
  const int d = a.d.value();
  PairState p{a.d, std::vector<Complex>(static_cast<std::size_t>(d * d))};
  for (int j1 = 0; j1 < d; ++j1)
    for (int j2 = 0; j2 < d; ++j2)
      p.amps[static_cast<std::size_t>(j1 * d + j2)] =
          a.amps[static_cast<std::size_t>(j1)] * b.amps[static_cast<std::size_t>(j2)];
  return p;
}

PairState make_bell(Dim d, int u, int v) {
  require_label(d, u, "u");
  require_label(d, v, "v");
  const int n = d.value();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  PairState p{d, std::vector<Complex>(static_cast<std::size_t>(n * n))};
  for (int j = 0; j < n; ++j) {
    p.amps[static_cast<std::size_t>(j * n + mod(n - j + v, n))] =
        root_of_unity(n, 1LL * j * u) * scale;
  }
  return p;
}

UnitaryOp shift_op(Dim d, int k) {
  require_label(d, k, "shift");
  const int n = d.value();
  UnitaryOp op{d, std::vector<Complex>(static_cast<std::size_t>(n * n))};
  for (int j = 0; j < n; ++j) op.matrix[static_cast<std::size_t>(mod(j + k, n) * n + j)] = 1.0;
  return op;
}

UnitaryOp fourier_op(Dim d) {
  const int n = d.value();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  UnitaryOp op{d, std::vector<Complex>(static_cast<std::size_t>(n * n))};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      op.matrix[static_cast<std::size_t>(j * n + k)] = root_of_unity(n, 1LL * j * k) * scale;
  return op;
}

UnitaryOp identity_op(Dim d) { return shift_op(d, 0); }

UnitaryOp adjoint(const UnitaryOp& op) {
  const int n = op.d.value();
  UnitaryOp out{op.d, std::vector<Complex>(op.matrix.size())};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out.matrix[static_cast<std::size_t>(c * n + r)] = std::conj(op.at(r, c));
  return out;
}

UnitaryOp operator*(const UnitaryOp& a, const UnitaryOp& b) {
  require_same_dim(a.d, b.d);
  const int n = a.d.value();
  UnitaryOp out{a.d, std::vector<Complex>(a.matrix.size())};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex acc{0.0, 0.0};
      for (int k = 0; k < n; ++k) acc += a.at(r, k) * b.at(k, c);
      out.matrix[static_cast<std::size_t>(r * n + c)] = acc;
    }
  return out;
}

double unitarity_error(const UnitaryOp& op) {
  const UnitaryOp prod = op * adjoint(op);
  const int n = op.d.value();
  double worst = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const Complex expected = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      worst = std::max(worst, std::abs(prod.at(r, c) - expected));
    }
  return worst;
}

SingleState apply(const UnitaryOp& op, const SingleState& s) {
  require_same_dim(op.d, s.d);
  const int n = op.d.value();
  SingleState out{s.d, std::vector<Complex>(s.amps.size())};
  for (int r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (int c = 0; c < n; ++c) acc += op.at(r, c) * s.amps[static_cast<std::size_t>(c)];
    out.amps[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

PairState apply_to_slot(const PairState& p, int slot, const UnitaryOp& op) {
  require_slot(slot);
  require_same_dim(p.d, op.d);
  const int n = p.d.value();
  PairState out{p.d, std::vector<Complex>(p.amps.size())};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Complex acc{0.0, 0.0};
      for (int j = 0; j < n; ++j) {
        acc += (slot == 1) ? op.at(a, j) * p.at(j, b) : op.at(b, j) * p.at(a, j);
      }
      out.amps[static_cast<std::size_t>(a * n + b)] = acc;
    }
  return out;
}

Complex inner_product(const SingleState& a, const SingleState& b) {
  require_same_dim(a.d, b.d);
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.amps.size(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

Complex inner_product(const PairState& a, const PairState& b) {
  require_same_dim(a.d, b.d);
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.amps.size(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

bool equal_up_to_global_phase(const PairState& a, const PairState& b, double tol) {
  return a.d == b.d && phase_aligned_equal(a.amps, b.amps, tol);
}

bool equal_up_to_global_phase(const SingleState& a, const SingleState& b, double tol) {
  return a.d == b.d && phase_aligned_equal(a.amps, b.amps, tol);
}

std::vector<double> slot_probabilities(const PairState& p, int slot) {
  require_slot(slot);
  const int n = p.d.value();
  std::vector<double> probs(static_cast<std::size_t>(n), 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      probs[static_cast<std::size_t>(slot == 1 ? a : b)] += std::norm(p.at(a, b));
  return probs;
}

std::vector<double> bell_probabilities(const PairState& p) {
  const int n = p.d.value();
  std::vector<double> probs(static_cast<std::size_t>(n * n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      probs[static_cast<std::size_t>(u * n + v)] = std::norm(bell_overlap(p, u, v));
  return probs;
}

std::vector<double> single_probabilities(const SingleState& s, Basis basis) {
  const int n = s.d.value();
  std::vector<double> probs(static_cast<std::size_t>(n));
  if (basis == Basis::computational) {
    for (int j = 0; j < n; ++j) probs[static_cast<std::size_t>(j)] = std::norm(s.amps[static_cast<std::size_t>(j)]);
    return probs;
  }
  const UnitaryOp f = fourier_op(s.d);
  for (int r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) acc += std::conj(f.at(j, r)) * s.amps[static_cast<std::size_t>(j)];
    probs[static_cast<std::size_t>(r)] = std::norm(acc);
  }
  return probs;
}

int collapse_slot_computational(PairState& p, int slot, RngStream& rng) {
  const std::vector<double> probs = slot_probabilities(p, slot);
  const int outcome = static_cast<int>(rng.sample_index(probs));
  const double pr = probs[static_cast<std::size_t>(outcome)];
  if (pr <= kPrune) throw std::logic_error("collapse on a zero-probability branch");
  const double scale = 1.0 / std::sqrt(pr);
  const int n = p.d.value();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto& amp = p.amps[static_cast<std::size_t>(a * n + b)];
      const int measured = (slot == 1) ? a : b;
      amp = (measured == outcome && std::norm(amp) > kPrune * kPrune) ? amp * scale : Complex{};
    }
  return outcome;
}

SlotMeasurement measure_slot_computational(const PairState& p, int slot, RngStream& rng) {
  PairState work = p;
  const int outcome = collapse_slot_computational(work, slot, rng);
  const int n = p.d.value();
  SingleState residual{p.d, std::vector<Complex>(static_cast<std::size_t>(n))};
  for (int j = 0; j < n; ++j) {
    residual.amps[static_cast<std::size_t>(j)] = (slot == 1) ? work.at(outcome, j) : work.at(j, outcome);
  }
  return {outcome, std::move(residual)};
}

int measure_single(const SingleState& s, Basis basis, RngStream& rng) {
  return static_cast<int>(rng.sample_index(single_probabilities(s, basis)));
}

int collapse_single(SingleState& s, Basis basis, RngStream& rng) {
  const int outcome = measure_single(s, basis, rng);
  s = (basis == Basis::computational) ? basis_state(s.d, outcome) : fourier_state(s.d, outcome);
  return outcome;
}

BellLabel measure_bell(const PairState& p, RngStream& rng) {
  const int n = p.d.value();
  const auto idx = static_cast<int>(rng.sample_index(bell_probabilities(p)));
  return {idx / n, idx % n};
}

BellLabel collapse_bell(PairState& p, RngStream& rng) {
  const BellLabel label = measure_bell(p, rng);
  p = make_bell(p.d, label.u, label.v);
  return label;
}

}  // namespace qsum
