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

// Built-in function families on [0,1] and [0,1]^2. Each family is defined by
// rational parameters and carries its zero set in closed form, which the
// verify paths and the test oracles use.

#pragma once

#include <optional>
#include <string>

#include "regulus/spaces.hpp"

namespace regulus {

/// The segment conv{a, b} in R^d (a single point when a == b), or the whole
/// unit cube.
struct ZeroSet {
  Point a;
  Point b;
  bool whole_cube = false;
};

/// Exact squared Euclidean distance from x to the set.
Rational squared_distance(const ZeroSet& zeros, const Point& x);

/// The point of the set closest to the origin.
Point min_norm_point(const ZeroSet& zeros);

struct FunctionInstance {
  UcFunctionRep function;
  ZeroSet zeros;
  /// The enclosure evaluator behind function, for oracles that need F off
  /// the dense sequence.
  IntervalEvaluator evaluator;
};

/// |x - p| (Euclidean), Lipschitz 1.
FunctionInstance abs_distance_to_point(const CompactSpaceRep& space, Point p);

/// |x - p|^2. The Lipschitz exponent is the least c with
/// 2^c >= 2 max_{x in cube} |x - p|.
FunctionInstance squared_distance_to_point(const CompactSpaceRep& space, Point p);

/// dist(x, [lo, hi]) on [0,1], Lipschitz 1.
FunctionInstance distance_to_interval(const CompactSpaceRep& space, Rational lo, Rational hi);

/// dist(x, conv{a, b}) in R^2, Lipschitz 1.
FunctionInstance distance_to_segment(const CompactSpaceRep& space, Point a, Point b);

/// F = 0 everywhere.
FunctionInstance constant_zero(const CompactSpaceRep& space, std::size_t dimension);

struct RegularityViolation {
  Nat n = 0;
  Index index = 0;
  Rational squared_distance;
};

/// Samples a_0 .. a_{samples-1} of a space with coordinates. A sample whose
/// value is certified below 2^-rho(n) (approximation at rho(n) + 2) must lie
/// within 2^-n of the zero set for every n <= n_max; returns the first
/// sample that does not.
std::optional<RegularityViolation> sample_regularity(const CompactSpaceRep& space, const UcFunctionRep& f,
                                                     const RegularityModulus& rho, const ZeroSet& zeros,
                                                     Nat n_max, Nat samples);

/// Enclosure of sqrt(q) of width at most 2^-k, degenerate when q is a
/// perfect square.
RationalInterval sqrt_enclosure(const Rational& q, Nat k);

}  // namespace regulus
