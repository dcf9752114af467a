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
 * What a coalition can deduce about another party's input.
 *
 * Every value in a run (encoded shares, final outcomes s1/s2, masks) is a
 * variable over Z_d. The coalition's private records, its in-flight
 * observations and the public bulletin each contribute linear equations; a
 * target coordinate is determined when its linear form lies in the span of
 * those equations.
 */
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qsum/strategy.hpp"

namespace qsum {

/// Linear system over Z_d reduced with unit pivots only. Over composite d a
/// form reachable only through non-unit pivots is reported as undetermined.
class ModularSystem {
 public:
  ModularSystem(int vars, int d);

  int size() const { return vars_; }
  int modulus() const { return d_; }

  /// Adds sum_k coef_k * x_{var_k} = rhs.
  void add(const std::vector<std::pair<int, int>>& terms, int rhs);
  /// Value of sum_k coef_k * x_{var_k} if the equations force it.
  std::optional<int> evaluate(const std::vector<std::pair<int, int>>& form) const;
  /// Number of equations that reduced to 0 = c with c != 0.
  int inconsistencies() const { return inconsistent_; }

 private:
  struct Row {
    std::vector<int> coef;
    int rhs;
    int pivot;
  };
  void reduce(std::vector<int>& coef, int& rhs) const;

  int vars_;
  int d_;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;  // var -> row index or -1
  int inconsistent_ = 0;
};

/// One computational measurement a colluder made before the protocol's own
/// final measurement. hop is the number of transmissions the sequence had
/// completed (0: at the owner before any shift).
struct Observation {
  int origin = 0;
  int position = 0;  // 1-based
  int hop = 0;
  int value = 0;
};

struct InferenceReport {
  std::vector<std::optional<int>> coordinates;  // one per input coordinate
  int inconsistencies = 0;
};

/// Best-effort deduction of `target`'s inputs from everything `members`
/// jointly know at the end of a completed run.
InferenceReport infer_inputs(const FinishContext& ctx, const std::vector<int>& members,
                             int target, const std::vector<Observation>& observations);

}  // namespace qsum
