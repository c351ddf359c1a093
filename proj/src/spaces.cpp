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

#include "regulus/spaces.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "regulus/errors.hpp"

namespace regulus {

namespace {

Nat isqrt(Nat n) {
  auto r = static_cast<Nat>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && (r > n / r)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

Index index_of_dyadic_numerator(Nat numerator, Nat resolution) {
  if (numerator == 0) return 0;
  if (resolution < 64 && numerator == (Nat{1} << resolution)) return 1;
  const auto trailing = static_cast<Nat>(std::countr_zero(numerator));
  const Nat odd = numerator >> trailing;
  const Nat level = resolution - trailing;
  return (Nat{1} << (level - 1)) + 1 + (odd - 1) / 2;
}

// Least index among numerators lo..hi at the given resolution: 0 and 1 for
// the endpoints, otherwise the unique coarsest dyadic in the range.
Index min_dyadic_index(Nat lo, Nat hi, Nat resolution) {
  if (lo == 0) return 0;
  if (resolution < 64 && hi >= (Nat{1} << resolution)) return 1;
  for (Nat t = resolution;; --t) {
    const Nat step = Nat{1} << t;
    const Nat candidate = ((lo + step - 1) >> t) << t;
    if (candidate <= hi) return index_of_dyadic_numerator(candidate, resolution);
    if (t == 0) break;
  }
  throw std::invalid_argument("min_dyadic_index: empty range");
}

}  // namespace

Rational dyadic_point(Index i) {
  if (i == 0) return Rational(0);
  if (i == 1) return Rational(1);
  const auto level = static_cast<Nat>(std::bit_width(i - 1));
  const Nat position = i - (Nat{1} << (level - 1)) - 1;
  return Rational(mpz_class(2 * position + 1) , mpz_class(1) << static_cast<mp_bitcnt_t>(level));
}

Index dyadic_index(const Rational& x) {
  if (x.sign() < 0 || x > Rational(1)) throw std::invalid_argument("dyadic_index: point outside [0,1]");
  if (x.is_zero()) return 0;
  if (x == Rational(1)) return 1;
  const mpz_class den = x.denominator();
  if (mpz_popcount(den.get_mpz_t()) != 1) throw std::invalid_argument("dyadic_index: not a dyadic rational");
  const Nat level = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
  if (level >= 64) throw std::out_of_range("dyadic_index: denominator too large");
  const Nat odd = x.numerator().get_ui();
  return (Nat{1} << (level - 1)) + 1 + (odd - 1) / 2;
}

CompactSpaceRep interval_space() {
  auto grid = std::make_shared<DyadicGrid>();
  grid->dimension = 1;
  grid->resolution = [](Index limit) -> Nat {
    return limit <= 1 ? 0 : static_cast<Nat>(std::bit_width(limit - 1));
  };
  grid->index_of = [](std::span<const Nat> numerators, Nat resolution) {
    return index_of_dyadic_numerator(numerators[0], resolution);
  };
  grid->min_index = [](std::span<const Nat> lo, std::span<const Nat> hi, Nat resolution) {
    return min_dyadic_index(lo[0], hi[0], resolution);
  };
  return CompactSpaceRep{
      .dist = [](Index i, Index j) { return RealName::exact(abs(dyadic_point(i) - dyadic_point(j))); },
      .alpha = Modulus([](Nat k) { return saturating_pow2(saturating_add(k, 1)); }, "2^(k+1)"),
      .label = "interval [0,1]",
      .describe = [](Index i) { return dyadic_point(i).to_string(); },
      .coordinates = [](Index i) { return Point{dyadic_point(i)}; },
      .grid = std::move(grid),
  };
}

Index pair_index(Index i, Index j) {
  if (i < j) return saturating_add(saturating_mul(j, j), i);
  return saturating_add(saturating_add(saturating_mul(i, i), i), j);
}

std::pair<Index, Index> unpair_index(Index n) {
  const Nat s = isqrt(n);
  const Nat r = n - s * s;
  if (r < s) return {r, s};
  return {s, r - s};
}

CompactSpaceRep product_space(const CompactSpaceRep& s, const CompactSpaceRep& t) {
  CompactSpaceRep out{
      .dist =
          [ds = s.dist, dt = t.dist](Index n, Index m) {
            const auto [i1, j1] = unpair_index(n);
            const auto [i2, j2] = unpair_index(m);
            return sqrt_name(square(ds(i1, i2)) + square(dt(j1, j2)));
          },
      .alpha = Modulus(
          [as = s.alpha, at = t.alpha](Nat k) {
            const Nat a = std::max(as(saturating_add(k, 1)), at(saturating_add(k, 1)));
            const Nat side = saturating_add(a, 1);
            const Nat sq = saturating_mul(side, side);
            return sq == kNatMax ? kNatMax : sq - 1;
          },
          "shell(" + s.alpha.description() + ", " + t.alpha.description() + " at k+1)"),
      .label = s.label + " x " + t.label,
      .describe =
          [fs = s.describe, ft = t.describe](Index n) {
            const auto [i, j] = unpair_index(n);
            return "(" + fs(i) + ", " + ft(j) + ")";
          },
      .coordinates = nullptr,
      .grid = nullptr,
  };
  if (s.coordinates && t.coordinates) {
    out.coordinates = [cs = s.coordinates, ct = t.coordinates](Index n) {
      const auto [i, j] = unpair_index(n);
      Point p = cs(i);
      Point q = ct(j);
      p.insert(p.end(), q.begin(), q.end());
      return p;
    };
  }
  if (s.grid && t.grid) {
    auto grid = std::make_shared<DyadicGrid>();
    grid->dimension = s.grid->dimension + t.grid->dimension;
    grid->resolution = [gs = s.grid, gt = t.grid](Index limit) {
      const Nat side = isqrt(limit);
      return std::max(gs->resolution(side), gt->resolution(side));
    };
    grid->index_of = [gs = s.grid, gt = t.grid](std::span<const Nat> numerators, Nat resolution) {
      const Index i = gs->index_of(numerators.first(gs->dimension), resolution);
      const Index j = gt->index_of(numerators.subspan(gs->dimension), resolution);
      return pair_index(i, j);
    };
    // The pairing is increasing in each argument, so the box minimum pairs
    // the component minima.
    grid->min_index = [gs = s.grid, gt = t.grid](std::span<const Nat> lo, std::span<const Nat> hi,
                                                 Nat resolution) {
      const std::size_t ds = gs->dimension;
      return pair_index(gs->min_index(lo.first(ds), hi.first(ds), resolution),
                        gt->min_index(lo.subspan(ds), hi.subspan(ds), resolution));
    };
    out.grid = std::move(grid);
  }
  return out;
}

UcFunctionRep lipschitz_function(const CompactSpaceRep& space, IntervalEvaluator evaluator,
                                 Nat lipschitz_exponent, std::string label) {
  if (!space.coordinates) throw std::invalid_argument("lipschitz_function needs a space with coordinates");
  auto checked = [evaluator, label](const Point& x, Nat k) {
    RationalInterval enclosure = evaluator(x, k);
    if (enclosure.hi < enclosure.lo || enclosure.hi - enclosure.lo > Rational::pow2(-static_cast<long>(k))) {
      throw EvaluatorNotConvergent("evaluator not convergent: " + label + " at precision " + std::to_string(k));
    }
    return enclosure;
  };
  for (Index i : {Index{0}, Index{1}}) {
    const Point x = space.coordinates(i);
    for (Nat k = 0; k <= 8; ++k) checked(x, k);
  }
  return UcFunctionRep{
      .value =
          [coordinates = space.coordinates, checked](Index i) {
            Point x = coordinates(i);
            RationalInterval first = checked(x, 0);
            // A degenerate enclosure pins the value exactly.
            if (first.lo == first.hi) return RealName::exact(first.lo);
            return RealName::from_approximator(
                [x = std::move(x), checked](Nat k) { return checked(x, k).lo; });
          },
      .omega = Modulus::affine(1, lipschitz_exponent),
      .label = std::move(label),
      .lipschitz_exponent = lipschitz_exponent,
  };
}

NormedCompactRep euclidean_normed(CompactSpaceRep base, Nat norm_bound) {
  if (!base.coordinates) throw std::invalid_argument("euclidean_normed needs a space with coordinates");
  auto norm = [coordinates = base.coordinates](Index i) {
    Rational sum(0);
    for (const Rational& c : coordinates(i)) sum += c * c;
    return sqrt_name(sum);
  };
  return NormedCompactRep{
      .base = std::move(base),
      .norm = std::move(norm),
      .eta = Modulus::affine(2, 3),
      .norm_bound = norm_bound,
      .rounds_down = true,
  };
}

}  // namespace regulus
