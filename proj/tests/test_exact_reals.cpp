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

#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <thread>

#include "regulus/modulus.hpp"
#include "regulus/real_name.hpp"
#include "support/support.hpp"

namespace regulus {
namespace {

Rational p2(long e) { return Rational::pow2(e); }

// |approx(k) - v| <= 2^-k for a rational v.
::testing::AssertionResult within(const RealName& x, const Rational& v, Nat k) {
  const Rational a = x.approx(k);
  if (abs(a - v) <= p2(-static_cast<long>(k))) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "approx(" << k << ") = " << a << " vs " << v;
}

// |approx(k) - sqrt(q)| <= 2^-k, decided by squaring.
::testing::AssertionResult within_sqrt(const RealName& x, const Rational& q, Nat k) {
  const Rational a = x.approx(k);
  const Rational lo = a - p2(-static_cast<long>(k));
  const Rational hi = a + p2(-static_cast<long>(k));
  const bool ok = (lo.sign() <= 0 || lo * lo <= q) && hi * hi >= q;
  if (ok) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "approx(" << k << ") = " << a << " not within 2^-k of sqrt(" << q << ")";
}

// A name of v that answers with the worst allowed error, alternating sign.
RealName adversarial(const Rational& v) {
  return RealName::from_approximator([v](Nat k) {
    const Rational e = p2(-static_cast<long>(k));
    return k % 2 == 0 ? v + e : v - e;
  });
}

std::vector<Rational> sample_rationals(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 97);
  std::vector<Rational> out{Rational(0), Rational(1), Rational(-1), Rational(1, 3)};
  while (out.size() < n) out.emplace_back(num(rng), den(rng));
  return out;
}

TEST(Rational, ParsesAndPrintsCanonically) {
  EXPECT_EQ(Rational::parse("2/4").to_string(), "1/2");
  EXPECT_EQ(Rational::parse("-3/9").to_string(), "-1/3");
  EXPECT_EQ(Rational::parse("7").to_string(), "7/1");
  EXPECT_EQ(Rational::parse("0/5").to_string(), "0/1");
  EXPECT_EQ(Rational(6, -4).to_string(), "-3/2");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "a/2", "1/", "/2", "1//2", "1.5", "1/-2", " "}) {
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, PowersOfTwo) {
  EXPECT_EQ(p2(0), Rational(1));
  EXPECT_EQ(p2(10), Rational(1024));
  EXPECT_EQ(p2(-3), Rational(1, 8));
}

TEST(Rational, FloorAndCeil) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(4).floor(), 4);
  EXPECT_EQ(Rational(4).ceil(), 4);
}

TEST(Rational, CeilLog2MatchesDoublingOracle) {
  for (const Rational& q : sample_rationals(200, 7)) {
    if (q.sign() <= 0) continue;
    long e = -40;
    while (p2(e) < q) ++e;
    EXPECT_EQ(ceil_log2(q), e) << q;
  }
  EXPECT_THROW(ceil_log2(Rational(0)), std::domain_error);
}

TEST(Rational, SqrtFloorAgreesWithBisection) {
  for (const Rational& q : sample_rationals(120, 11)) {
    const Rational a = abs(q);
    for (Nat k : {0u, 1u, 5u, 17u, 40u}) {
      const Rational r = sqrt_floor(a, k);
      const Rational step = p2(-static_cast<long>(k));
      EXPECT_LE(r * r, a);
      EXPECT_GT((r + step) * (r + step), a);
      EXPECT_EQ((r / step).denominator(), 1);
      EXPECT_LE(abs(r - testing::bisection_sqrt(a, k + 4)), step);
    }
  }
  EXPECT_THROW(sqrt_floor(Rational(-1), 3), std::domain_error);
}

TEST(RealName, ExactNamesAnswerTheValue) {
  const RealName x = RealName::exact(Rational(5, 7));
  for (Nat k = 0; k < 50; k += 7) EXPECT_EQ(x.approx(k), Rational(5, 7));
  ASSERT_NE(x.exact_value(), nullptr);
  EXPECT_EQ(RealName().approx(3), Rational(0));
}

TEST(RealName, ArithmeticKeepsTheContractUnderWorstCaseOperands) {
  const auto values = sample_rationals(30, 3);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const Rational a = values[i];
    const Rational b = values[i + 1];
    const RealName x = adversarial(a);
    const RealName y = adversarial(b);
    for (Nat k = 0; k <= 30; k += 3) {
      EXPECT_TRUE(within(x + y, a + b, k));
      EXPECT_TRUE(within(x - y, a - b, k));
      EXPECT_TRUE(within(-x, -a, k));
      EXPECT_TRUE(within(abs(x), abs(a), k));
      EXPECT_TRUE(within(max(x, y), max(a, b), k));
      EXPECT_TRUE(within(square(x), a * a, k));
    }
  }
}

TEST(RealName, ExactOperandsStayExact) {
  const RealName s = RealName::exact(Rational(1, 3)) + RealName::exact(Rational(1, 6));
  ASSERT_NE(s.exact_value(), nullptr);
  EXPECT_EQ(*s.exact_value(), Rational(1, 2));
}

TEST(RealName, SquareRoots) {
  for (const Rational& q : sample_rationals(40, 5)) {
    const Rational a = abs(q);
    for (Nat k = 0; k <= 40; k += 4) {
      EXPECT_TRUE(within_sqrt(sqrt_name(a), a, k));
      EXPECT_TRUE(within_sqrt(sqrt_name(adversarial(a)), a, k));
    }
  }
  ASSERT_NE(sqrt_name(Rational(9, 4)).exact_value(), nullptr);
  EXPECT_EQ(sqrt_name(Rational(9, 4)).approx(0), Rational(3, 2));
  // Rounds down: approx(k) <= sqrt(2).
  for (Nat k = 0; k < 30; ++k) {
    const Rational a = sqrt_name(Rational(2)).approx(k);
    EXPECT_LE(a * a, Rational(2));
  }
  EXPECT_THROW(sqrt_name(Rational(-1)), std::domain_error);
}

TEST(RealName, ApproximationsAreComputedOncePerPrecision) {
  auto calls = std::make_shared<std::atomic<int>>(0);
  const RealName x = RealName::from_approximator([calls](Nat k) {
    ++*calls;
    return p2(-static_cast<long>(k));
  });
  x.approx(4);
  x.approx(4);
  x.approx(5);
  EXPECT_EQ(calls->load(), 2);
}

TEST(RealName, ConcurrentReadersSeeOneValue) {
  // A name whose approximator is nondeterministic within its 2^-k budget:
  // readers must still agree on the cached answer.
  auto counter = std::make_shared<std::atomic<long>>(0);
  const RealName x = RealName::from_approximator([counter](Nat k) {
    const long c = (*counter)++ % 3 - 1;
    return Rational(c) * p2(-static_cast<long>(k) - 1);
  });
  std::vector<std::vector<Rational>> seen(8);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < seen.size(); ++t) {
    threads.emplace_back([&, t] {
      for (Nat k = 0; k < 64; ++k) seen[t].push_back(x.approx(k));
    });
  }
  for (auto& th : threads) th.join();
  for (std::size_t t = 1; t < seen.size(); ++t) EXPECT_EQ(seen[t], seen[0]);
}

TEST(RealName, PrecisionGuard) {
  const RealName x = sqrt_name(Rational(2));
  EXPECT_THROW(x.approx(kMaxPrecision + 1), std::domain_error);
}

TEST(RealName, ThresholdTests) {
  const RealName x = RealName::exact(Rational(1, 4));
  EXPECT_TRUE(strictly_below(x, 3, Rational(1, 2)));
  EXPECT_FALSE(strictly_below(x, 3, Rational(1, 4)));
  EXPECT_TRUE(at_most(x, 3, Rational(1, 4)));
  EXPECT_TRUE(strictly_below(RealName::exact(Rational(-1, 8)), 0, Rational(1, 4)));
  // The contract: |x| + 2^-p <= t forces success.
  for (const Rational& v : sample_rationals(50, 9)) {
    for (Nat p = 0; p < 12; ++p) {
      const Rational t = abs(v) + p2(-static_cast<long>(p));
      EXPECT_TRUE(strictly_below(adversarial(v), p, t + p2(-40)));
    }
  }
}

TEST(Modulus, AffineTableAndConstant) {
  EXPECT_EQ(Modulus::affine(2, 3)(5), 13u);
  EXPECT_EQ(Modulus::affine(2, 3).description(), "2*k+3");
  EXPECT_EQ(Modulus::constant(7)(100), 7u);
  const Modulus t = Modulus::table({4, 1, 9}, 2, 1);
  EXPECT_EQ(t(0), 4u);
  EXPECT_EQ(t(2), 9u);
  EXPECT_EQ(t(3), 7u);
  EXPECT_EQ(Modulus::identity()(12), 12u);
}

TEST(Modulus, Saturates) {
  EXPECT_EQ(Modulus::affine(kNatMax, 1)(2), kNatMax);
  EXPECT_EQ(saturating_pow2(64), kNatMax);
  EXPECT_EQ(saturating_pow2(10), 1024u);
  EXPECT_EQ(saturating_add(kNatMax, 1), kNatMax);
  EXPECT_EQ(saturating_mul(kNatMax / 2, 3), kNatMax);
}

TEST(Modulus, RegularityModuliAreNormalized) {
  const RegularityModulus rho(Modulus::table({9, 0, 2, 1}, 0, 1));
  const std::vector<Nat> expected{9, 9, 9, 9, 9, 9, 9, 9, 9, 9, 10, 11};
  for (Nat k = 0; k < expected.size(); ++k) EXPECT_EQ(rho(k), expected[k]) << k;
  // rho(k) >= k and monotone, for an arbitrary raw function.
  const RegularityModulus wild(Modulus([](Nat k) { return (k * 7919) % 13; }, "wild"));
  for (Nat k = 0; k < 40; ++k) {
    EXPECT_GE(wild(k), k);
    if (k) EXPECT_GE(wild(k), wild(k - 1));
  }
  const TreeRegularityModulus tree(Modulus::constant(7));
  EXPECT_EQ(tree(3), 7u);
  EXPECT_EQ(tree(9), 9u);
  EXPECT_THROW(rho(kMaxPrecision + 1), std::domain_error);
}

TEST(Modulus, UniquenessModulusIsAtLeastK) {
  const ModulusOfUniqueness phi(Modulus::constant(3));
  EXPECT_EQ(phi(1), 3u);
  EXPECT_EQ(phi(8), 8u);
}

}  // namespace
}  // namespace regulus
