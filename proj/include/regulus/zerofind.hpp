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

// Zero finding on a represented compact metric space from a modulus of
// regularity. The output is an index sequence beta with x_k = a_beta(k)
// converging to a zero of F at rate 2^-k.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regulus/errors.hpp"
#include "regulus/spaces.hpp"

namespace regulus {

struct ZeroProblem {
  CompactSpaceRep space;
  UcFunctionRep f;
  RegularityModulus rho;
};

/// What a single bounded search was asked to do. Reported to the observer
/// before the search starts.
struct SearchEvent {
  std::string stage;  // "base" or "step"
  Nat k = 0;          // the k of beta(k) being defined
  Nat bound = 0;
  Nat f_precision = 0;
  Rational f_threshold;
  std::optional<Nat> d_precision;
  std::optional<Rational> d_threshold;
};

struct SearchOptions {
  /// Hard cap on any search bound. Defaults to REGULUS_MAX_SEARCH if set.
  std::optional<Nat> max_search;
  std::function<void(const SearchEvent&)> observer;

  static SearchOptions from_environment();
};

/// Why beta(k) was chosen: the search bound and the rational test values.
/// For k = 0 only the F-test is present;
/// for k > 0 the distance test against x_{k-1} is present too.
struct ZeroCertificate {
  Nat k = 0;
  Index index = 0;
  Nat search_bound = 0;
  /// |F(x_k)| < 2^-level is what the test certifies: rho(2) at k = 0,
  /// max(k, rho(k+2)) afterwards.
  Nat level = 0;
  Nat f_precision = 0;
  Rational f_approx;
  Rational f_threshold;
  std::optional<Index> previous_index;
  Nat d_precision = 0;
  Rational d_approx;
  Rational d_threshold;
};

/// Lazily extended, memoized beta. Thread-safe; extension is sequential.
class ZeroApproximationSequence {
 public:
  ZeroApproximationSequence(ZeroProblem problem, SearchOptions options = SearchOptions::from_environment());

  /// Defines beta(0..k) if needed. Throws SearchExhausted.
  Index beta(Nat k) const;
  ZeroCertificate certificate(Nat k) const;
  /// Certificates for 0..k.
  std::vector<ZeroCertificate> certificates(Nat k) const;
  const ZeroProblem& problem() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

ZeroApproximationSequence find_zero(ZeroProblem problem, SearchOptions options = SearchOptions::from_environment());

struct ZeroCheck {
  Nat k = 0;
  Index index = 0;
  Rational f_approx;
  Rational f_threshold;
  bool f_pass = false;
  bool has_distance = false;
  Rational d_approx;
  Rational d_threshold;
  bool d_pass = false;
  /// Upper bounds implied by the tests: |F(x_k)| <= f_bound < 2^-level and
  /// d(x_k, x_{k-1}) <= d_bound < 2^-k.
  Rational f_bound;
  Rational d_bound;
  bool implied_pass = false;
  /// Stored values match the re-evaluation.
  bool matches_stored = false;
  bool pass = false;
};

struct ZeroVerifyReport {
  std::vector<ZeroCheck> rows;
  bool all_pass = true;
};

/// Re-evaluates the tests behind each certificate from fresh names, without
/// searching. Thresholds and precisions are recomputed from rho, so a wrong
/// index, level or threshold in a certificate makes that row fail.
ZeroVerifyReport verify_certificate(const ZeroProblem& problem, const std::vector<ZeroCertificate>& certificates,
                                    Nat up_to);

}  // namespace regulus
