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

#include "regulus/families.hpp"

#include <stdexcept>

#include "regulus/errors.hpp"

namespace regulus {

namespace {

Rational dot(const Point& x, const Point& y) {
  Rational s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Point minus(const Point& x, const Point& y) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

// Parameter of the point of conv{a, b} nearest to x.
Rational nearest_parameter(const Point& a, const Point& b, const Point& x) {
  const Point dir = minus(b, a);
  const Rational len2 = dot(dir, dir);
  if (len2.is_zero()) return Rational(0);
  return max(Rational(0), min(Rational(1), dot(minus(x, a), dir) / len2));
}

Point along(const Point& a, const Point& b, const Rational& t) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

void check_dimension(const CompactSpaceRep& space, const Point& p) {
  const Point probe = space.coordinates ? space.coordinates(0) : Point{};
  if (probe.size() != p.size()) {
    throw std::invalid_argument("parameter dimension " + std::to_string(p.size()) +
                                " does not match space dimension " + std::to_string(probe.size()));
  }
}

RationalInterval exact(const Rational& q) { return {q, q}; }

}  // namespace

Rational squared_distance(const ZeroSet& zeros, const Point& x) {
  if (zeros.whole_cube) return Rational(0);
  const Point nearest = along(zeros.a, zeros.b, nearest_parameter(zeros.a, zeros.b, x));
  const Point diff = minus(x, nearest);
  return dot(diff, diff);
}

Point min_norm_point(const ZeroSet& zeros) {
  if (zeros.whole_cube) return Point(zeros.a.size(), Rational(0));
  return along(zeros.a, zeros.b, nearest_parameter(zeros.a, zeros.b, Point(zeros.a.size(), Rational(0))));
}

RationalInterval sqrt_enclosure(const Rational& q, Nat k) {
  const Rational lo = sqrt_floor(q, k);
  if (lo * lo == q) return exact(lo);
  return {lo, lo + Rational::pow2(-static_cast<long>(k))};
}

FunctionInstance abs_distance_to_point(const CompactSpaceRep& space, Point p) {
  check_dimension(space, p);
  auto eval = [p](const Point& x, Nat k) {
    const Point d = minus(x, p);
    if (d.size() == 1) return exact(abs(d[0]));
    return sqrt_enclosure(dot(d, d), k);
  };
  return {lipschitz_function(space, eval, 0, "abs-distance-to-point"), ZeroSet{p, p}, eval};
}

FunctionInstance squared_distance_to_point(const CompactSpaceRep& space, Point p) {
  check_dimension(space, p);
  Rational m2(0);
  for (const Rational& c : p) m2 += max(c * c, (Rational(1) - c) * (Rational(1) - c));
  const long e = ceil_log2(Rational(4) * m2);
  const Nat c = e <= 0 ? 0 : static_cast<Nat>((e + 1) / 2);
  auto eval = [p](const Point& x, Nat) {
    const Point d = minus(x, p);
    return exact(dot(d, d));
  };
  return {lipschitz_function(space, eval, c, "squared-distance"), ZeroSet{p, p}, eval};
}

FunctionInstance distance_to_interval(const CompactSpaceRep& space, Rational lo, Rational hi) {
  if (hi < lo) throw std::invalid_argument("distance-to-interval needs lo <= hi");
  check_dimension(space, Point{lo});
  auto eval = [lo, hi](const Point& x, Nat) {
    return exact(max(Rational(0), max(lo - x[0], x[0] - hi)));
  };
  return {lipschitz_function(space, eval, 0, "distance-to-interval"), ZeroSet{Point{lo}, Point{hi}}, eval};
}

FunctionInstance distance_to_segment(const CompactSpaceRep& space, Point a, Point b) {
  if (a.size() != 2 || b.size() != 2) throw std::invalid_argument("distance-to-line-segment-2d needs points in R^2");
  check_dimension(space, a);
  ZeroSet zeros{a, b};
  auto eval = [zeros](const Point& x, Nat k) { return sqrt_enclosure(squared_distance(zeros, x), k); };
  return {lipschitz_function(space, eval, 0, "distance-to-line-segment-2d"), zeros, eval};
}

FunctionInstance constant_zero(const CompactSpaceRep& space, std::size_t dimension) {
  check_dimension(space, Point(dimension, Rational(0)));
  auto eval = [](const Point&, Nat) { return exact(Rational(0)); };
  ZeroSet zeros{Point(dimension, Rational(0)), Point(dimension, Rational(0)), true};
  return {lipschitz_function(space, eval, 0, "constant-zero"), zeros, eval};
}

std::optional<RegularityViolation> sample_regularity(const CompactSpaceRep& space, const UcFunctionRep& f,
                                                     const RegularityModulus& rho, const ZeroSet& zeros,
                                                     Nat n_max, Nat samples) {
  if (!space.coordinates) throw std::invalid_argument("sample_regularity needs a space with coordinates");
  for (Index i = 0; i < samples; ++i) {
    const Rational d2 = squared_distance(zeros, space.coordinates(i));
    const RealName value = f.value(i);
    for (Nat n = 0; n <= n_max; ++n) {
      const Nat level = rho(n);
      const Nat q = level + 2;
      const bool below = abs(value.approx(q)) + Rational::pow2(-static_cast<long>(q)) <
                         Rational::pow2(-static_cast<long>(level));
      if (below && d2 >= Rational::pow2(-2 * static_cast<long>(n))) return RegularityViolation{n, i, d2};
    }
  }
  return std::nullopt;
}

}  // namespace regulus
