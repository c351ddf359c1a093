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

#include "regulus/fejer.hpp"
#include "support/support.hpp"

namespace regulus {
namespace {

Rational p2(long e) { return Rational::pow2(e); }
long neg(Nat n) { return -static_cast<long>(n); }

MonotoneSequenceFixture custom() {
  MonotoneSequenceFixture fix;
  fix.prefix = {Rational(0), Rational(1, 2), Rational(1, 2)};
  fix.top = Rational(3, 4);
  fix.gap = Rational(1, 8);
  return fix;
}

// Direct partial sum of f with the given number of terms.
Rational partial_oracle(const MonotoneSequenceFixture& fix, const Rational& x, Nat terms) {
  Rational s(0);
  for (Nat l = 0; l < terms; ++l) s += p2(neg(l + 1)) * max(x, fix.a(l));
  return s;
}

TEST(Fixture, SequenceAndValidation) {
  const MonotoneSequenceFixture def;
  EXPECT_NO_THROW(def.validate());
  for (Nat l = 0; l < 20; ++l) EXPECT_EQ(def.a(l), Rational(1) - p2(neg(l + 1)));
  EXPECT_EQ(def.sup(), Rational(1));
  const MonotoneSequenceFixture c = custom();
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.a(3), Rational(3, 4) - Rational(1, 8) * p2(-4));
  EXPECT_EQ(c.sup(), Rational(3, 4));

  MonotoneSequenceFixture decreasing;
  decreasing.prefix = {Rational(1, 2), Rational(1, 4)};
  EXPECT_THROW(decreasing.validate(), std::invalid_argument);
  MonotoneSequenceFixture above;
  above.top = Rational(2);
  EXPECT_THROW(above.validate(), std::invalid_argument);
  MonotoneSequenceFixture below_prefix;
  below_prefix.prefix = {Rational(0), Rational(9, 10)};
  EXPECT_THROW(below_prefix.validate(), std::invalid_argument);
}

TEST(Fixture, ClosedFormMatchesPartialSums) {
  for (const MonotoneSequenceFixture& fix : {MonotoneSequenceFixture{}, custom()}) {
    for (long num = 0; num <= 64; ++num) {
      const Rational x(num, 64);
      const Rational exact = fix.f(x);
      for (Nat t : {1u, 5u, 12u, 30u}) {
        const Rational s = partial_oracle(fix, x, t);
        EXPECT_EQ(fix.f_partial(x, t), s);
        EXPECT_LE(s, exact);
        EXPECT_LE(exact - s, p2(neg(t)));
      }
      EXPECT_EQ(fix.T(x), (x + exact) / Rational(2));
      const RealName name = series_name(fix, x);
      for (Nat k : {0u, 10u, 40u}) EXPECT_LE(abs(name.approx(k) - exact), p2(neg(k)));
    }
  }
}

TEST(Fixture, FixedPointsAreTheTopInterval) {
  for (const MonotoneSequenceFixture& fix : {MonotoneSequenceFixture{}, custom()}) {
    for (long num = 0; num <= 64; ++num) {
      const Rational x(num, 64);
      EXPECT_EQ(fix.T(x) == x, x >= fix.sup()) << x;
    }
  }
}

TEST(Iteration, FirstIterateIsOneThird) {
  const ExactIteration it{MonotoneSequenceFixture{}};
  EXPECT_EQ(it.x(0), Rational(0));
  EXPECT_EQ(it.x(1), Rational(1, 3));
}

TEST(Iteration, ExactIteratesAgreeWithSeriesIteration) {
  for (const MonotoneSequenceFixture& fix : {MonotoneSequenceFixture{}, custom()}) {
    const ExactIteration it(fix);
    for (Nat n = 0; n <= 40; ++n) {
      EXPECT_EQ(it.x(n + 1), fix.T(it.x(n)));
      EXPECT_EQ(it.residual(n), abs(it.x(n + 1) - it.x(n)));
      EXPECT_LE(it.x(n), it.x(n + 1));
      EXPECT_LT(it.x(n), fix.sup());
      for (Nat k : {4u, 16u}) EXPECT_LE(abs(krasnoselskii(fix, n, k) - it.x(n)), p2(neg(k))) << n << " " << k;
    }
    EXPECT_TRUE(fejer_violations(it, fix.sup(), 200).empty());
    EXPECT_TRUE(fejer_violations(it, Rational(1), 200).empty());
  }
}

TEST(Iteration, FejerViolationsAreDetected) {
  const ExactIteration it{MonotoneSequenceFixture{}};
  // Any point below x_1 is passed by the iteration.
  EXPECT_FALSE(fejer_violations(it, Rational(1, 4), 10).empty());
}

TEST(Iteration, RepresentedIteration) {
  const ExactIteration it{custom()};
  const IterationRep rep = fixture_iteration(it);
  for (Nat n = 0; n <= 10; ++n) {
    EXPECT_EQ(rep.point(n).at(0).approx(30), it.x(n));
    EXPECT_LE(abs(rep.residual(n).approx(30) - it.residual(n)), p2(-30));
  }
}

TEST(Rates, BruteApproxRateIsLeast) {
  const ExactIteration it{MonotoneSequenceFixture{}};
  const ApproxSolutionRate r = brute_approx_rate(it, 14, Nat{1} << 20);
  for (Nat k = 0; k <= 14; ++k) {
    const Nat n = r(k);
    EXPECT_LT(it.residual(n), p2(neg(k)));
    for (Nat m = 0; m < n; ++m) ASSERT_GE(it.residual(m), p2(neg(k))) << k << " " << m;
  }
  EXPECT_THROW(r(15), std::domain_error);
}

TEST(Rates, BruteRegularityModulusOfTheFixture) {
  const CompactSpaceRep interval = interval_space();
  const MonotoneSequenceFixture fix;
  const FunctionInstance fi = fixture_residual_function(interval, fix);
  const RegularityModulus rho =
      brute_regularity_modulus(fi.evaluator, fi.zeros, *fi.function.lipschitz_exponent, 6, 2 * 6 + 8);
  for (Nat n = 0; n <= 6; ++n) EXPECT_EQ(rho(n), 2 * n + 2) << n;
  EXPECT_THROW(rho(7), std::domain_error);
  EXPECT_FALSE(sample_regularity(interval, fi.function, rho, fi.zeros, 6, 4096));
  // One less is refuted by sampling.
  const RegularityModulus smaller(Modulus::affine(2, 1));
  EXPECT_TRUE(sample_regularity(interval, fi.function, smaller, fi.zeros, 6, 4096));
}

TEST(Rates, CauchyRateOfTheFixture) {
  const ExactIteration it{MonotoneSequenceFixture{}};
  const RegularityModulus rho(Modulus::affine(2, 2));
  const ApproxSolutionRate r = brute_approx_rate(it, rho(9), Nat{1} << 20);
  const Modulus psi = cauchy_rate(rho, r);
  const std::vector<Nat> frozen{4, 9, 22, 48, 101, 208, 421, 849, 1705};
  for (Nat k = 0; k < frozen.size(); ++k) {
    EXPECT_EQ(psi(k), r(rho(k + 1)));
    EXPECT_EQ(psi(k), frozen[k]);
    // The iterates increase to 1, so the Cauchy condition past psi(k) is 1 - x_psi(k) < 2^-k.
    EXPECT_LT(Rational(1) - it.x(psi(k)), p2(neg(k))) << k;
  }
}

TEST(Rates, SandwichIndexIsLeast) {
  const ExactIteration it{MonotoneSequenceFixture{}};
  for (Nat k = 0; k <= 6; ++k) {
    for (Nat n : {0u, 1u, 5u, 64u, 100u}) {
      const SandwichCheck c = sandwich_check(it, k, n, 30);
      Nat l = 0;
      while (!(Rational(static_cast<long>(n)) * p2(neg(l)) < p2(neg(k)))) ++l;
      EXPECT_EQ(c.l_k, l);
      EXPECT_EQ(c.k, k);
      EXPECT_EQ(c.n, n);
    }
  }
}

}  // namespace
}  // namespace regulus
