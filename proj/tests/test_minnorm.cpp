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

#include "regulus/families.hpp"
#include "regulus/minnorm.hpp"

namespace regulus {
namespace {

Rational p2(long e) { return Rational::pow2(e); }
long neg(Nat n) { return -static_cast<long>(n); }

Nat ceil_log2_oracle(Nat n) {
  Nat e = 0;
  while ((Nat{1} << e) < n) ++e;
  return e;
}

struct Fixture {
  std::string name;
  MinNormProblem problem;
  ZeroSet zeros;
};

Fixture make(std::string name, const CompactSpaceRep& space, FunctionInstance fi, Modulus rho, Nat norm_bound = 1) {
  return {std::move(name),
          MinNormProblem{euclidean_normed(space, norm_bound), std::move(fi.function), RegularityModulus(std::move(rho)),
                         hilbert_uniqueness_modulus(norm_bound)},
          std::move(fi.zeros)};
}

Fixture band() {
  const CompactSpaceRep interval = interval_space();
  return make("band", interval, distance_to_interval(interval, Rational(1, 4), Rational(3, 4)), Modulus::identity());
}

Fixture segment() {
  const CompactSpaceRep square = product_space(interval_space(), interval_space());
  return make("segment", square, distance_to_segment(square, {Rational(0), Rational(1)}, {Rational(1), Rational(0)}),
              Modulus::identity());
}

MinNormOptions with(MinNormStrategy s) {
  MinNormOptions o;
  o.strategy = s;
  return o;
}

TEST(HilbertModulus, MatchesClosedForm) {
  for (Nat d = 0; d <= 40; ++d) {
    const ModulusOfUniqueness phi = hilbert_uniqueness_modulus(d);
    for (Nat k = 0; k <= 30; ++k) EXPECT_EQ(phi(k), 2 * k + 4 + ceil_log2_oracle(d + 1)) << d << " " << k;
  }
  EXPECT_EQ(hilbert_uniqueness_modulus(1)(0), 5u);
}

TEST(MinNorm, CertificateParametersFollowTheModuli) {
  const Fixture fx = band();
  const MinNormProblem& p = fx.problem;
  for (Nat k = 0; k <= 3; ++k) {
    const MinNormCertificate c = min_norm_step(p, k, with(MinNormStrategy::kCellSearch));
    const Nat pp = p.phi(k + 1) + 2;
    EXPECT_EQ(c.p, pp);
    EXPECT_EQ(c.rho_p, p.rho(pp));
    EXPECT_EQ(c.K, p.rho(pp) + 2);
    EXPECT_EQ(c.L, p.rep.base.alpha(std::max(pp, p.f.omega(c.K))));
    EXPECT_EQ(c.threshold, p2(neg(c.rho_p + 1)));
    EXPECT_EQ(c.k, k);
  }
}

TEST(MinNorm, StrategiesAgreeOnTheInterval) {
  const Fixture fx = band();
  for (Nat k = 0; k <= 2; ++k) {
    const MinNormCertificate a = min_norm_step(fx.problem, k, with(MinNormStrategy::kEnumerate));
    const MinNormCertificate b = min_norm_step(fx.problem, k, with(MinNormStrategy::kCellSearch));
    EXPECT_EQ(a.index, b.index) << k;
    EXPECT_EQ(a.norm_approx, b.norm_approx);
    ASSERT_TRUE(a.admissible_count);
    EXPECT_FALSE(b.admissible_count);
    EXPECT_EQ(a.evaluated, a.L + 1);
    EXPECT_LT(b.evaluated, a.evaluated);
  }
}

TEST(MinNorm, StrategiesAgreeOnTheSquare) {
  // phi(k) = k is not a valid modulus here; it only keeps L small enough to
  // scan. Both strategies answer the same question regardless.
  const CompactSpaceRep square = product_space(interval_space(), interval_space());
  for (FunctionInstance fi : {distance_to_segment(square, {Rational(0), Rational(1)}, {Rational(1), Rational(0)}),
                              abs_distance_to_point(square, {Rational(1, 3), Rational(3, 5)})}) {
    const MinNormProblem p{euclidean_normed(square, 1), fi.function, RegularityModulus(Modulus::identity()),
                           ModulusOfUniqueness(Modulus::identity())};
    for (Nat k = 0; k <= 1; ++k) {
      const MinNormCertificate a = min_norm_step(p, k, with(MinNormStrategy::kEnumerate));
      const MinNormCertificate b = min_norm_step(p, k, with(MinNormStrategy::kCellSearch));
      EXPECT_EQ(a.index, b.index) << fi.function.label << " k=" << k;
      EXPECT_EQ(a.norm_approx, b.norm_approx);
    }
  }
}

TEST(MinNorm, ConvergesToTheMinimalNormZero) {
  for (const Fixture& fx : {band(), segment()}) {
    const Nat depth = fx.name == "band" ? 8 : 4;
    const MinNormResult r = find_min_norm_zero(fx.problem, depth, with(MinNormStrategy::kCellSearch));
    const Point z0 = min_norm_point(fx.zeros);
    for (Nat k = 0; k <= depth; ++k) {
      const Point x = fx.problem.rep.base.coordinates(r.index(k));
      Rational d2(0);
      for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - z0[i]) * (x[i] - z0[i]);
      EXPECT_LE(d2, p2(-2 * static_cast<long>(k))) << fx.name << " k=" << k;
    }
    EXPECT_TRUE(verify_min_norm(fx.problem, r, depth).all_pass) << fx.name;
  }
}

TEST(MinNorm, ContendersAreOrderedAndIncludeTheAnswer) {
  const Fixture fx = band();
  const MinNormCertificate c = min_norm_step(fx.problem, 3, with(MinNormStrategy::kCellSearch));
  ASSERT_FALSE(c.contenders.empty());
  EXPECT_EQ(c.contenders.front().index, c.index);
  for (std::size_t i = 0; i < c.contenders.size(); ++i) {
    const Contender& x = c.contenders[i];
    EXPECT_LE(abs(x.f_approx), c.threshold);
    EXPECT_LE(x.norm_approx, c.norm_approx + p2(neg(c.p) + 1));
    if (i > 0) {
      const Contender& w = c.contenders[i - 1];
      EXPECT_TRUE(w.norm_approx < x.norm_approx || (w.norm_approx == x.norm_approx && w.index < x.index));
    }
  }
}

TEST(MinNorm, TamperedResultsFail) {
  const Fixture fx = band();
  const MinNormResult good = find_min_norm_zero(fx.problem, 1, with(MinNormStrategy::kEnumerate));
  ASSERT_TRUE(verify_min_norm(fx.problem, good, 1).all_pass);

  MinNormResult wrong_index = good;
  wrong_index.steps[1].index = 0;
  EXPECT_FALSE(verify_min_norm(fx.problem, wrong_index, 1).all_pass);

  MinNormResult wrong_p = good;
  wrong_p.steps[0].p += 1;
  EXPECT_FALSE(verify_min_norm(fx.problem, wrong_p, 1).all_pass);

  // An admissible index that is not the argmin.
  MinNormResult not_min = good;
  const Index other = dyadic_index(Rational(1, 2));
  not_min.steps[1].index = other;
  not_min.steps[1].contenders.front().index = other;
  EXPECT_FALSE(verify_min_norm(fx.problem, not_min, 1).all_pass);
}

TEST(MinNorm, NoZeroMeansEmptyAdmissibleSet) {
  const CompactSpaceRep interval = interval_space();
  auto eval = [](const Point& x, Nat) {
    const Rational v = x[0] + Rational(1);
    return RationalInterval{v, v};
  };
  const MinNormProblem p{euclidean_normed(interval, 1), lipschitz_function(interval, eval, 0, "shifted"),
                         RegularityModulus(Modulus::identity()), hilbert_uniqueness_modulus(1)};
  for (MinNormStrategy s : {MinNormStrategy::kEnumerate, MinNormStrategy::kCellSearch}) {
    try {
      min_norm_step(p, 0, with(s));
      FAIL() << "expected EmptyAdmissibleSet";
    } catch (const EmptyAdmissibleSet& e) {
      EXPECT_EQ(e.k(), 0u);
    }
  }
}

TEST(MinNorm, ConstantZeroPicksTheOrigin) {
  const CompactSpaceRep interval = interval_space();
  const CompactSpaceRep square = product_space(interval_space(), interval_space());
  for (const Fixture& fx : {make("zero-1d", interval, constant_zero(interval, 1), Modulus::identity()),
                            make("zero-2d", square, constant_zero(square, 2), Modulus::identity())}) {
    const MinNormResult r = find_min_norm_zero(fx.problem, 6, with(MinNormStrategy::kCellSearch));
    for (Nat k = 0; k <= 6; ++k) EXPECT_EQ(r.index(k), 0u) << fx.name;
  }
}

TEST(MinNorm, SearchCapIsHonoured) {
  const Fixture fx = band();
  MinNormOptions o = with(MinNormStrategy::kEnumerate);
  o.max_search = 3;
  EXPECT_THROW(min_norm_step(fx.problem, 0, o), SearchExhausted);
}

}  // namespace
}  // namespace regulus
