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

// Rates for Fejer monotone iterations from a modulus of regularity, and the
// monotone-sequence fixture on [0,1]: for a nondecreasing (a_l) in [0,1],
// f(x) = sum_l 2^(-l-1) max{x, a_l}, T(x) = (x + f(x)) / 2, x_0 = 0.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "regulus/families.hpp"
#include "regulus/modulus.hpp"
#include "regulus/spaces.hpp"

namespace regulus {

/// (a_l): an explicit prefix, then a_l = top - gap * 2^(-l-1) for
/// l >= prefix.size(). The default is the sequence 1 - 2^(-l-1).
struct MonotoneSequenceFixture {
  std::vector<Rational> prefix;
  Rational top{1};
  Rational gap{1};

  /// Throws std::invalid_argument unless 0 <= a_l <= a_{l+1} <= 1.
  void validate() const;
  Rational a(Nat l) const;
  /// sup_l a_l. Fix(T) = [sup, 1].
  Rational sup() const;

  /// f and T in closed form (exact).
  Rational f(const Rational& x) const;
  Rational T(const Rational& x) const;

  /// The partial sum of f over l < terms; below f(x) by at most 2^-terms.
  Rational f_partial(const Rational& x, Nat terms) const;
};

/// Name of f(x) built from partial sums: approx(k) uses k terms.
RealName series_name(const MonotoneSequenceFixture& fix, const Rational& x);

/// Exact iterates x_n and residuals |x_n - T x_n|, memoized.
class ExactIteration {
 public:
  explicit ExactIteration(MonotoneSequenceFixture fix);
  Rational x(Nat n) const;
  Rational residual(Nat n) const;
  const MonotoneSequenceFixture& fixture() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// x_n to within 2^-k, with every step using a partial sum of
/// k + bit_width(n) terms. Independent of the closed form.
Rational krasnoselskii(const MonotoneSequenceFixture& fix, Nat n, Nat k);

/// An iteration in a represented space: iterates as coordinate names and the
/// residual F(x_n) as a name.
struct IterationRep {
  std::function<std::vector<RealName>(Nat)> point;
  std::function<RealName(Nat)> residual;
};

IterationRep fixture_iteration(const ExactIteration& iteration);

/// F(x) = |x - Tx| on [0,1], Lipschitz 2, with zero set Fix(T).
FunctionInstance fixture_residual_function(const CompactSpaceRep& interval, const MonotoneSequenceFixture& fix);

/// r with |F(x_r(k))| < 2^-k.
using ApproxSolutionRate = Modulus;

/// psi(k) = r(rho(k+1)): for m, m' >= psi(k), d(x_m, x_m') < 2^-k.
Modulus cauchy_rate(const RegularityModulus& rho, const ApproxSolutionRate& r);

/// Least n with residual(n) < 2^-k for k <= k_max, from the exact iterates.
/// Queries beyond k_max throw std::domain_error.
ApproxSolutionRate brute_approx_rate(const ExactIteration& iteration, Nat k_max, Nat n_limit);

/// Least k, for each n <= n_max, such that every x in [0,1] with
/// dist(x, Z) >= 2^-n has |F(x)| >= 2^-k, certified by bisection of [0,1]
/// down to cells of width 2^-depth using the Lipschitz bound 2^c. A k that
/// cannot be decided at that resolution counts as invalid, so values may
/// exceed the least valid ones. Queries beyond n_max throw std::domain_error.
///
/// Throws GridTooCoarse when no k up to 2*depth can be certified.
RegularityModulus brute_regularity_modulus(const IntervalEvaluator& f, const ZeroSet& zeros,
                                           Nat lipschitz_exponent, Nat n_max, Nat depth);

/// Indices n <= n_max with |x_{n+1} - p| > |x_n - p|.
std::vector<Nat> fejer_violations(const ExactIteration& iteration, const Rational& p, Nat n_max);

/// Diagnostic on the fixture: with n = n_k,
/// upper: a_l < x_n + 2^(-k+1) for all l <= l_max;
/// lower: a_{l_k} >= x_n - 2^-k, l_k least with n * 2^-l_k < 2^-k.
struct SandwichCheck {
  Nat k = 0;
  Nat n = 0;
  Nat l_k = 0;
  bool upper = false;
  bool lower = false;
};

SandwichCheck sandwich_check(const ExactIteration& iteration, Nat k, Nat n, Nat l_max);

}  // namespace regulus
