// Copyright 2026 The Regulus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The zero of minimal norm on a compact subset of a uniformly convex space,
// computed from a modulus of regularity and a modulus of uniqueness for the
// metric projection of 0 onto the (convex) zero set.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regulus/errors.hpp"
#include "regulus/spaces.hpp"

namespace regulus {

/// phi(k) = 2k + 4 + ceil(log2(D + 1)) for Hilbert spaces, from the
/// parallelogram law: |y1 - y2|^2 <= 8 (D + 1) eps for eps-minimizers.
ModulusOfUniqueness hilbert_uniqueness_modulus(Nat norm_bound);

struct MinNormProblem {
  NormedCompactRep rep;
  UcFunctionRep f;
  RegularityModulus rho;
  ModulusOfUniqueness phi;
};

/// How the set S_k = {n <= L : |F(a_n)(K)| <= 2^-rho(p)-1} is searched for
/// its least-index norm minimizer. Both strategies return the same index.
enum class MinNormStrategy {
  /// Literal scan of n = 0..L.
  kEnumerate,
  /// Best-first branch and bound over boxes of the space's dyadic grid.
  /// Boxes are discarded using omega (no admissible point inside), the
  /// triangle inequality for the norm (no point can beat the incumbent) and
  /// the grid's least index (ties would lose). Single points are evaluated
  /// exactly as the scan would.
  kCellSearch,
  /// kEnumerate when L <= enumerate_limit or the space has no grid.
  kAuto,
};

struct MinNormOptions {
  MinNormStrategy strategy = MinNormStrategy::kAuto;
  Nat enumerate_limit = Nat{1} << 16;
  /// Caps L for the scan and the number of evaluated points for the cell
  /// search. Defaults to REGULUS_MAX_SEARCH if set.
  std::optional<Nat> max_search;

  static MinNormOptions from_environment();
};

/// A member of S_k with its test values.
struct Contender {
  Index index = 0;
  Rational f_approx;
  Rational norm_approx;
};

struct MinNormCertificate {
  Nat k = 0;
  /// p = phi(k+1) + 2, the precision of the norm comparison.
  Nat p = 0;
  /// rho(p); membership threshold is 2^-(rho_p + 1).
  Nat rho_p = 0;
  /// K = rho(p) + 2, the precision of the membership test.
  Nat K = 0;
  /// L = alpha(max(p, omega(K))).
  Nat L = 0;
  Rational threshold;
  Index index = 0;
  Rational f_approx;
  Rational norm_approx;
  /// |S_k| when S_k was scanned in full.
  std::optional<Nat> admissible_count;
  /// Evaluated members of S_k whose norm approximation lies within 2^-p+1 of
  /// the minimum, ordered by (norm approximation, index). Includes index.
  std::vector<Contender> contenders;
  std::string strategy;
  Nat evaluated = 0;
};

struct MinNormResult {
  std::vector<MinNormCertificate> steps;
  Index index(Nat k) const { return steps.at(k).index; }
};

/// One k. Throws EmptyAdmissibleSet or SearchExhausted.
MinNormCertificate min_norm_step(const MinNormProblem& problem, Nat k,
                                 const MinNormOptions& options = MinNormOptions::from_environment());

/// Steps 0..k_max.
MinNormResult find_min_norm_zero(const MinNormProblem& problem, Nat k_max,
                                 const MinNormOptions& options = MinNormOptions::from_environment());

struct MinNormCheck {
  Nat k = 0;
  Index index = 0;
  bool parameters_match = false;
  bool index_in_range = false;
  bool admissible = false;
  bool contenders_admissible = false;
  bool argmin_over_contenders = false;
  /// Set when L <= exhaustive_limit: the index equals the literal scan's.
  std::optional<bool> argmin_exhaustive;
  bool pass = false;
};

struct MinNormVerifyReport {
  std::vector<MinNormCheck> rows;
  bool all_pass = true;
};

/// Recomputes p, K, L and the threshold from the moduli, re-evaluates the
/// membership test for the index and every contender and the comparisons
/// between them; with L <= exhaustive_limit also rescans S_k in full.
MinNormVerifyReport verify_min_norm(const MinNormProblem& problem, const MinNormResult& result, Nat up_to,
                                    Nat exhaustive_limit = Nat{1} << 12);

}  // namespace regulus
