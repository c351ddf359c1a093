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
#include <limits>
#include <string>
#include <vector>

#include "regulus/rational.hpp"

namespace regulus {

inline constexpr Nat kNatMax = std::numeric_limits<Nat>::max();

Nat saturating_add(Nat a, Nat b);
Nat saturating_mul(Nat a, Nat b);
/// 2^e, saturating at kNatMax.
Nat saturating_pow2(Nat e);

/// A function N -> N as used for every modulus (alpha, omega, rho, ...).
/// Arithmetic saturates rather than wraps.
class Modulus {
 public:
  using Fn = std::function<Nat(Nat)>;

  Modulus(Fn fn, std::string description);

  static Modulus identity();
  static Modulus constant(Nat c);
  /// k -> u*k + v
  static Modulus affine(Nat u, Nat v);
  /// values[k] for k < values.size(), then k -> tail_u*k + tail_v.
  static Modulus table(std::vector<Nat> values, Nat tail_u, Nat tail_v);

  Nat operator()(Nat k) const { return fn_(k); }
  const std::string& description() const { return description_; }

 private:
  Fn fn_;
  std::string description_;
};

/// rho with |F(x)| < 2^-rho(n) implying some zero within 2^-n of x, over the
/// whole space. Stored normalized: rho(k) = max(raw(k), k, rho(k-1)).
class RegularityModulus {
 public:
  explicit RegularityModulus(Modulus raw);
  Nat operator()(Nat k) const;
  const Modulus& raw() const { return raw_; }
  std::string description() const { return raw_.description(); }

 private:
  Modulus raw_;
};

/// Modulus of regularity for an infinite binary tree w.r.t. its infinite
/// paths: a member prefix of length rho(k) forces an infinite path agreeing
/// on the first k bits. Same normalization as RegularityModulus.
class TreeRegularityModulus {
 public:
  explicit TreeRegularityModulus(Modulus raw);
  Nat operator()(Nat k) const;
  const Modulus& raw() const { return raw_; }
  std::string description() const { return raw_.description(); }

 private:
  Modulus raw_;
};

/// Modulus of uniqueness for the metric projection of 0 onto a convex set C:
/// two points of C with norms within 2^-phi(k) of inf_C |.| are 2^-k-close.
/// Stored with phi(k) >= k.
class ModulusOfUniqueness {
 public:
  explicit ModulusOfUniqueness(Modulus raw);
  Nat operator()(Nat k) const;
  const Modulus& raw() const { return raw_; }
  std::string description() const { return raw_.description(); }

 private:
  Modulus raw_;
};

/// Normalizes any raw modulus to the monotone form max(raw(j) for j <= k, k).
Nat normalized_value(const Modulus& raw, Nat k);

}  // namespace regulus
