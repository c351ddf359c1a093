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

#include "regulus/real_name.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace regulus {

struct RealName::Impl {
  std::optional<Rational> exact;
  Approximator approximator;
  mutable std::mutex mutex;
  mutable std::map<Nat, Rational> cache;
};

namespace {

void check_precision(Nat k) {
  if (k > kMaxPrecision) throw std::domain_error("precision 2^-" + std::to_string(k) + " out of range");
}

}  // namespace

RealName::RealName() : RealName(exact(Rational(0))) {}

RealName::RealName(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

RealName RealName::exact(Rational q) {
  auto impl = std::make_shared<Impl>();
  impl->exact = std::move(q);
  return RealName(std::move(impl));
}

RealName RealName::from_approximator(Approximator approximator) {
  auto impl = std::make_shared<Impl>();
  impl->approximator = std::move(approximator);
  return RealName(std::move(impl));
}

Rational RealName::approx(Nat k) const {
  check_precision(k);
  if (impl_->exact) return *impl_->exact;
  {
    std::lock_guard lock(impl_->mutex);
    if (auto it = impl_->cache.find(k); it != impl_->cache.end()) return it->second;
  }
  // Computed outside the lock: operands have their own locks, and a racing
  // duplicate computation yields the same value.
  Rational q = impl_->approximator(k);
  std::lock_guard lock(impl_->mutex);
  return impl_->cache.try_emplace(k, std::move(q)).first->second;
}

const Rational* RealName::exact_value() const { return impl_->exact ? &*impl_->exact : nullptr; }

RealName arith(ArithOp op, const RealName& x, const RealName& y) {
  const Rational* ex = x.exact_value();
  const Rational* ey = y.exact_value();
  if (ex && (op == ArithOp::kAbs || ey)) {
    switch (op) {
      case ArithOp::kAdd: return RealName::exact(*ex + *ey);
      case ArithOp::kSub: return RealName::exact(*ex - *ey);
      case ArithOp::kAbs: return RealName::exact(abs(*ex));
      case ArithOp::kMax: return RealName::exact(max(*ex, *ey));
    }
  }
  switch (op) {
    case ArithOp::kAdd:
      return RealName::from_approximator([x, y](Nat k) { return x.approx(k + 1) + y.approx(k + 1); });
    case ArithOp::kSub:
      return RealName::from_approximator([x, y](Nat k) { return x.approx(k + 1) - y.approx(k + 1); });
    case ArithOp::kAbs:
      return RealName::from_approximator([x](Nat k) { return abs(x.approx(k + 1)); });
    case ArithOp::kMax:
      return RealName::from_approximator(
          [x, y](Nat k) { return max(x.approx(k + 1), y.approx(k + 1)); });
  }
  throw std::logic_error("unknown arithmetic operation");
}

RealName operator+(const RealName& x, const RealName& y) { return arith(ArithOp::kAdd, x, y); }
RealName operator-(const RealName& x, const RealName& y) { return arith(ArithOp::kSub, x, y); }
RealName abs(const RealName& x) { return arith(ArithOp::kAbs, x, x); }
RealName max(const RealName& x, const RealName& y) { return arith(ArithOp::kMax, x, y); }

RealName operator-(const RealName& x) {
  if (const Rational* e = x.exact_value()) return RealName::exact(-*e);
  return RealName::from_approximator([x](Nat k) { return -x.approx(k); });
}

RealName square(const RealName& x) {
  if (const Rational* e = x.exact_value()) return RealName::exact(*e * *e);
  // |x| <= |approx(0)| + 1 =: B and |x^2 - q^2| <= |x - q| (2B + 1).
  const Rational bound = abs(x.approx(0)) * Rational(2) + Rational(3);
  const Nat extra = static_cast<Nat>(std::max(0L, ceil_log2(bound)));
  return RealName::from_approximator([x, extra](Nat k) {
    const Rational q = x.approx(k + extra);
    return q * q;
  });
}

RealName sqrt_name(const Rational& q) {
  if (q.sign() < 0) throw std::domain_error("square root of a negative rational");
  if (q.is_zero()) return RealName::exact(Rational(0));
  // Perfect squares of small rationals come out exact.
  mpz_class n = q.numerator(), d = q.denominator();
  if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return RealName::exact(Rational(rn, rd));
  }
  return RealName::from_approximator([q](Nat k) { return sqrt_floor(q, k); });
}

RealName sqrt_name(const RealName& y) {
  if (const Rational* e = y.exact_value()) return sqrt_name(*e);
  // |y - r| <= 2^-2k-2 gives |sqrt y - sqrt r| <= 2^-k-1; the floor root
  // loses at most another 2^-k-1.
  return RealName::from_approximator([y](Nat k) {
    const Rational r = max(y.approx(2 * k + 2), Rational(0));
    return sqrt_floor(r, k + 1);
  });
}

bool strictly_below(const RealName& x, Nat p, const Rational& threshold) {
  return abs(x.approx(p)) < threshold;
}

bool at_most(const RealName& x, Nat p, const Rational& threshold) {
  return abs(x.approx(p)) <= threshold;
}

}  // namespace regulus
