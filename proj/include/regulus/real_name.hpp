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

#pragma once

#include <functional>
#include <memory>

#include "regulus/rational.hpp"

namespace regulus {

/// A real number given by its rational approximations: approx(k) is within
/// 2^-k of the represented value (non-strict), for every k.
///
/// Names are immutable handles. Approximations are computed at most once per
/// precision and cached; the cache is guarded so that concurrent readers see
/// the same values a single reader would.
///
/// There is deliberately no comparison between two RealNames. The only
/// decisions available are on rational approximations, see strictly_below().
class RealName {
 public:
  using Approximator = std::function<Rational(Nat)>;

  /// The zero name.
  RealName();

  /// Name of a known rational; approx(k) returns q itself at every precision.
  static RealName exact(Rational q);

  /// Wraps an approximation function. The caller guarantees the 2^-k contract.
  static RealName from_approximator(Approximator approximator);

  Rational approx(Nat k) const;

  /// The value, if this name was built from a known rational.
  const Rational* exact_value() const;

 private:
  struct Impl;
  explicit RealName(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

enum class ArithOp { kAdd, kSub, kAbs, kMax };

/// Exact combination of two names. Unary kAbs ignores y. A non-exact result
/// answers approx(k) by querying its operands at k + 1.
RealName arith(ArithOp op, const RealName& x, const RealName& y);

RealName operator+(const RealName& x, const RealName& y);
RealName operator-(const RealName& x, const RealName& y);
RealName operator-(const RealName& x);
RealName abs(const RealName& x);
RealName max(const RealName& x, const RealName& y);
RealName square(const RealName& x);

/// sqrt(q) for a rational q >= 0, approximated from below by integer roots.
RealName sqrt_name(const Rational& q);

/// sqrt(y) for a name of a non-negative real (not checkable, caller's duty).
RealName sqrt_name(const RealName& y);

/// Decides |approx(x, p)| < threshold.
///
/// If |x| + 2^-p <= threshold the test succeeds; if it succeeds then
/// |x| < threshold + 2^-p. With threshold 2^-N and p >= N + 1 this gives the
/// usual reading: |x| < 2^-N-1 implies success, success implies |x| < 2^-N+1.
bool strictly_below(const RealName& x, Nat p, const Rational& threshold);

/// Decides |approx(x, p)| <= threshold.
bool at_most(const RealName& x, Nat p, const Rational& threshold);

}  // namespace regulus
