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

// Compact metric spaces and functions on them, given purely by oracles and
// moduli: a dense sequence (a_i) known only through a distance oracle, a
// modulus of total boundedness, and function values F(a_i) as names.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regulus/modulus.hpp"
#include "regulus/real_name.hpp"

namespace regulus {

/// Position in a dense sequence.
using Index = Nat;

/// Exact coordinates of a dense-sequence point that lives in R^d.
using Point = std::vector<Rational>;

/// Optional refinement structure of a dense sequence inside [0,1]^d with the
/// Euclidean metric: every a_n with n <= L lies on the grid (2^-M Z)^d, where
/// M = resolution(L), and index_of maps grid numerators back to that n.
///
/// Searches that must look at all of a_0..a_L can use it to prune whole boxes
/// of the grid with the moduli instead of visiting every index.
struct DyadicGrid {
  std::size_t dimension = 0;
  std::function<Nat(Index)> resolution;
  std::function<Index(std::span<const Nat> numerators, Nat resolution)> index_of;
  /// Least index of a grid point in the box lo <= numerators <= hi.
  std::function<Index(std::span<const Nat> lo, std::span<const Nat> hi, Nat resolution)> min_index;
};

/// A compact metric space in standard representation.
///
/// alpha is a modulus of total boundedness: for every x and k some i <= alpha(k)
/// has d(x, a_i) < 2^-k. dist(i, j) names d(a_i, a_j).
struct CompactSpaceRep {
  std::function<RealName(Index, Index)> dist;
  Modulus alpha;
  std::string label;
  /// Human-readable a_i.
  std::function<std::string(Index)> describe;
  /// Exact coordinates when the space is a subset of R^d; empty otherwise.
  std::function<Point(Index)> coordinates;
  std::shared_ptr<const DyadicGrid> grid;
};

/// A uniformly continuous F: X -> R, given on the dense sequence.
/// omega: d(x, y) < 2^-omega(k) implies |F(x) - F(y)| < 2^-k.
struct UcFunctionRep {
  std::function<RealName(Index)> value;
  Modulus omega;
  std::string label;
  /// c with |F(x) - F(y)| <= 2^c d(x, y), when known.
  std::optional<Nat> lipschitz_exponent;
};

/// A compact K inside a uniformly convex normed space: base representation
/// plus norm names of the dense sequence, a modulus of uniform convexity, and
/// a bound D on the norm of some zero.
struct NormedCompactRep {
  CompactSpaceRep base;
  std::function<RealName(Index)> norm;
  Modulus eta;
  Nat norm_bound = 0;
  /// Norm names satisfy floor(|a_n| 2^p) / 2^p <= approx(p) <= |a_n|. Lets
  /// searches bound approximations over a region from below by the norm.
  bool rounds_down = false;
};

// --- [0,1] -----------------------------------------------------------------

/// a_0 = 0, a_1 = 1, then the dyadics of each new denominator 2^m in
/// increasing order: 1/2, 1/4, 3/4, 1/8, ... Every dyadic with denominator
/// at most 2^m has index at most 2^m.
Rational dyadic_point(Index i);

/// Inverse of dyadic_point; x must be a dyadic rational in [0,1].
Index dyadic_index(const Rational& x);

/// [0,1] with the dyadic dense sequence above and alpha(k) = 2^(k+1).
CompactSpaceRep interval_space();

// --- products ----------------------------------------------------------------

/// Bijection N x N -> N enumerating pairs by square shells:
/// every pair with max(i, j) <= A has code at most (A+1)^2 - 1.
Index pair_index(Index i, Index j);
std::pair<Index, Index> unpair_index(Index n);

/// S x T with the Euclidean product metric sqrt(d_S^2 + d_T^2).
/// alpha(k) = (A+1)^2 - 1 with A = max(alpha_S(k+1), alpha_T(k+1)).
CompactSpaceRep product_space(const CompactSpaceRep& s, const CompactSpaceRep& t);

// --- functions ---------------------------------------------------------------

struct RationalInterval {
  Rational lo;
  Rational hi;
};

/// Evaluates F at an exact point to precision k: the returned enclosure must
/// contain F(x) and have width at most 2^-k.
using IntervalEvaluator = std::function<RationalInterval(const Point&, Nat)>;

/// F given by an enclosure evaluator on a space with coordinates, Lipschitz
/// with constant 2^c. omega(k) = k + c.
///
/// Throws EvaluatorNotConvergent when the evaluator returns an enclosure wider
/// than requested, both for the construction-time probe and later queries.
UcFunctionRep lipschitz_function(const CompactSpaceRep& space, IntervalEvaluator evaluator,
                                 Nat lipschitz_exponent, std::string label);

/// Euclidean norm names from the coordinates of a space in R^d. The modulus
/// of convexity is the Hilbert one, eta(k) = 2k + 3. Norm names round down.
NormedCompactRep euclidean_normed(CompactSpaceRep base, Nat norm_bound);

}  // namespace regulus
