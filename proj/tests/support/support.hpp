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

// Shared fixtures and independent oracles for the unit tests and the
// acceptance suite.

#pragma once

#include <random>
#include <vector>

#include "regulus/families.hpp"
#include "regulus/trees.hpp"

namespace regulus::testing {

struct CorpusTree {
  TreeDescription description;
  BinaryTree tree;
};

/// Deterministic corpus of finite-description trees. Depths cycle through
/// 3..12, tails through the three infinite rules. Each tree is grown around
/// a random spine of full depth with subcritical random branching, so it is
/// infinite, sparse, and usually has dead branches left of the spine.
std::vector<CorpusTree> tree_corpus(std::size_t count = 60, std::uint64_t seed = 20260214);

/// One random description of the given depth and tail.
TreeDescription random_description(std::mt19937_64& rng, Nat depth, TailRule tail);

/// Whether some member of length `length` extends s (s itself must be a
/// member). Plain recursive search, used as an exact quantifier over paths.
bool extends_to(const BinaryTree& tree, const BitString& s, Nat length);

/// sqrt(q) bracketed by bisection on [0, max(1, q)] to width 2^-k: returns
/// lo with lo^2 <= q <= (lo + 2^-k)^2.
Rational bisection_sqrt(const Rational& q, Nat k);

/// Squared distance from x to the zero set, minimized over a grid of step
/// 2^-grid_bits along the set (a segment or a point).
Rational grid_squared_distance(const ZeroSet& zeros, const Point& x, Nat grid_bits);

}  // namespace regulus::testing
