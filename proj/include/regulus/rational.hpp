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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace regulus {

/// Natural numbers as they appear in moduli, precisions and indices.
using Nat = std::uint64_t;

/// Largest precision exponent a name may be queried at. Anything beyond this
/// is almost certainly a runaway modulus, and 2^-k with k this large would
/// already need hundreds of kilobytes per rational.
inline constexpr Nat kMaxPrecision = 1u << 20;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class; canonical form is maintained after
/// every operation, so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(mpq_class value);

  /// Parses "p/q" or "p" (optional leading sign on p, q > 0).
  static Rational parse(std::string_view text);

  /// 2^exponent for any signed exponent.
  static Rational pow2(long exponent);

  /// "p/q" with q always present, e.g. "0/1", "-3/8".
  std::string to_string() const;

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  /// Largest integer <= this.
  mpz_class floor() const;
  /// Smallest integer >= this.
  mpz_class ceil() const;

  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& q);
Rational max(const Rational& a, const Rational& b);
Rational min(const Rational& a, const Rational& b);

/// floor(sqrt(q) * 2^k) / 2^k for q >= 0, hence within 2^-k below sqrt(q).
Rational sqrt_floor(const Rational& q, Nat k);

/// Smallest e with 2^e >= q, for q > 0 (may be negative).
long ceil_log2(const Rational& q);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace regulus
