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

#include <cstdlib>
#include <thread>

#include "regulus/families.hpp"
#include "regulus/zerofind.hpp"

namespace regulus {
namespace {

Rational p2(long e) { return Rational::pow2(e); }
long neg(Nat n) { return -static_cast<long>(n); }

struct Fixture {
  std::string name;
  ZeroProblem problem;
  ZeroSet zeros;
  Nat depth;
};

Fixture make(std::string name, CompactSpaceRep space, FunctionInstance fi, Modulus rho, Nat depth) {
  return {std::move(name), ZeroProblem{std::move(space), std::move(fi.function), RegularityModulus(std::move(rho))},
          std::move(fi.zeros), depth};
}

std::vector<Fixture> fixtures() {
  const CompactSpaceRep interval = interval_space();
  const CompactSpaceRep square = product_space(interval_space(), interval_space());
  std::vector<Fixture> out;
  out.push_back(make("abs-third", interval, abs_distance_to_point(interval, {Rational(1, 3)}), Modulus::identity(), 10));
  out.push_back(make("squared-half", interval, squared_distance_to_point(interval, {Rational(1, 2)}),
                     Modulus::affine(2, 0), 8));
  out.push_back(make("band", interval, distance_to_interval(interval, Rational(1, 4), Rational(3, 4)),
                     Modulus::identity(), 10));
  out.push_back(make("point-2d", square, abs_distance_to_point(square, {Rational(1, 3), Rational(2, 3)}),
                     Modulus::identity(), 5));
  out.push_back(make("segment-2d", square,
                     distance_to_segment(square, {Rational(0), Rational(1)}, {Rational(1), Rational(0)}),
                     Modulus::identity(), 5));
  return out;
}

SearchOptions uncapped() { return SearchOptions{}; }

TEST(ZeroFind, ApproximationsConvergeToTheZeroSet) {
  for (const Fixture& fx : fixtures()) {
    const auto seq = find_zero(fx.problem, uncapped());
    std::vector<Point> xs;
    for (Nat k = 0; k <= fx.depth; ++k) xs.push_back(fx.problem.space.coordinates(seq.beta(k)));
    for (Nat k = 0; k <= fx.depth; ++k) {
      EXPECT_LT(squared_distance(fx.zeros, xs[k]), p2(-2 * static_cast<long>(k))) << fx.name << " k=" << k;
      for (Nat l = k + 1; l <= fx.depth; ++l) {
        Rational d2(0);
        for (std::size_t i = 0; i < xs[k].size(); ++i) d2 += (xs[k][i] - xs[l][i]) * (xs[k][i] - xs[l][i]);
        EXPECT_LT(d2, p2(-2 * static_cast<long>(k))) << fx.name << " k=" << k << " l=" << l;
      }
    }
    const auto report = verify_certificate(fx.problem, seq.certificates(fx.depth), fx.depth);
    EXPECT_TRUE(report.all_pass) << fx.name;
    EXPECT_EQ(report.rows.size(), fx.depth + 1);
  }
}

TEST(ZeroFind, KnownIndicesForAbsoluteValue) {
  // |x - 1/2| with rho = id: the search stops at the first index whose value
  // passes the test, and a_2 = 1/2 is exact.
  const CompactSpaceRep interval = interval_space();
  const Fixture fx = make("abs-half", interval, abs_distance_to_point(interval, {Rational(1, 2)}), Modulus::identity(), 0);
  const auto seq = find_zero(fx.problem, uncapped());
  for (Nat k = 0; k <= 12; ++k) EXPECT_EQ(seq.beta(k), 2u) << k;
}

TEST(ZeroFind, TamperedCertificatesFail) {
  const Fixture fx = fixtures()[0];
  const auto seq = find_zero(fx.problem, uncapped());
  const auto good = seq.certificates(6);
  ASSERT_TRUE(verify_certificate(fx.problem, good, 6).all_pass);

  auto bad_index = good;
  bad_index[4].index = bad_index[4].index + 1;
  EXPECT_FALSE(verify_certificate(fx.problem, bad_index, 6).all_pass);

  auto bad_approx = good;
  bad_approx[3].f_approx += p2(-40);
  EXPECT_FALSE(verify_certificate(fx.problem, bad_approx, 6).all_pass);

  auto bad_level = good;
  bad_level[2].level += 1;
  EXPECT_FALSE(verify_certificate(fx.problem, bad_level, 6).all_pass);

  auto bad_threshold = good;
  bad_threshold[5].d_threshold = Rational(1);
  EXPECT_FALSE(verify_certificate(fx.problem, bad_threshold, 6).all_pass);

  auto bad_bound = good;
  bad_bound[1].search_bound = 0;
  EXPECT_FALSE(verify_certificate(fx.problem, bad_bound, 6).all_pass);
}

TEST(ZeroFind, ObserverSeesTheDocumentedBounds) {
  const Fixture fx = fixtures()[1];
  std::vector<SearchEvent> events;
  SearchOptions options;
  options.observer = [&](const SearchEvent& e) { events.push_back(e); };
  const auto seq = find_zero(fx.problem, options);
  seq.beta(6);
  ASSERT_EQ(events.size(), 7u);
  const ZeroProblem& p = fx.problem;
  // Base: F-test at rho(2) + 2 against 2^-(rho(2) + 1), bound alpha(omega(rho(2) + 2)).
  EXPECT_EQ(events[0].stage, "base");
  EXPECT_EQ(events[0].f_precision, p.rho(2) + 2);
  EXPECT_EQ(events[0].f_threshold, p2(neg(p.rho(2) + 1)));
  EXPECT_EQ(events[0].bound, p.space.alpha(p.f.omega(p.rho(2) + 2)));
  EXPECT_FALSE(events[0].d_precision);
  for (Nat k = 1; k <= 6; ++k) {
    const SearchEvent& e = events[k];
    const Nat j = k - 1;
    const Nat level = std::max(j + 1, p.rho(j + 3));
    EXPECT_EQ(e.stage, "step");
    EXPECT_EQ(e.k, k);
    EXPECT_EQ(e.f_precision, level + 2);
    EXPECT_EQ(e.f_threshold, p2(neg(level + 1)));
    ASSERT_TRUE(e.d_precision);
    EXPECT_EQ(*e.d_precision, j + 4);
    EXPECT_EQ(*e.d_threshold, p2(neg(j + 3)) + p2(neg(j + 2)));
    EXPECT_EQ(e.bound, p.space.alpha(std::max(j + 4, p.f.omega(level + 2))));
  }
  // Memoized: no new searches.
  seq.beta(3);
  EXPECT_EQ(events.size(), 7u);
}

TEST(ZeroFind, NoZeroExhaustsTheBaseSearch) {
  const CompactSpaceRep interval = interval_space();
  // F = |x - 1/2| + 1 never vanishes on [0,1].
  auto eval = [](const Point& x, Nat) {
    const Rational v = abs(x[0] - Rational(1, 2)) + Rational(1);
    return RationalInterval{v, v};
  };
  ZeroProblem p{interval, lipschitz_function(interval, eval, 0, "shifted"), RegularityModulus(Modulus::identity())};
  try {
    find_zero(p, uncapped()).beta(0);
    FAIL() << "expected SearchExhausted";
  } catch (const SearchExhausted& e) {
    EXPECT_EQ(e.stage(), "base");
    EXPECT_EQ(e.k(), 0u);
    EXPECT_EQ(e.bound(), interval.alpha(p.f.omega(p.rho(2) + 2)));
    EXPECT_FALSE(e.capped());
  }
}

TEST(ZeroFind, SearchCapIsReported) {
  const Fixture fx = fixtures()[0];
  SearchOptions options;
  options.max_search = 1;
  try {
    find_zero(fx.problem, options).beta(4);
    FAIL() << "expected SearchExhausted";
  } catch (const SearchExhausted& e) {
    EXPECT_TRUE(e.capped());
  }
  ::setenv("REGULUS_MAX_SEARCH", "7", 1);
  EXPECT_EQ(SearchOptions::from_environment().max_search, std::optional<Nat>(7));
  ::setenv("REGULUS_MAX_SEARCH", "seven", 1);
  EXPECT_FALSE(SearchOptions::from_environment().max_search);
  ::unsetenv("REGULUS_MAX_SEARCH");
  EXPECT_FALSE(SearchOptions::from_environment().max_search);
}

TEST(ZeroFind, DeterministicAndThreadSafe) {
  const Fixture fx = fixtures()[2];
  std::vector<Index> first;
  const auto a = find_zero(fx.problem, uncapped());
  for (Nat k = 0; k <= 9; ++k) first.push_back(a.beta(k));
  const auto b = find_zero(fx.problem, uncapped());
  std::vector<std::vector<Index>> seen(8);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (Nat k = 9 - t % 3;; --k) {
        seen[t].insert(seen[t].begin(), b.beta(k));
        if (k == 0) break;
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 0; t < 8; ++t) {
    for (std::size_t k = 0; k < seen[t].size(); ++k) EXPECT_EQ(seen[t][k], first[k]);
  }
}

}  // namespace
}  // namespace regulus
