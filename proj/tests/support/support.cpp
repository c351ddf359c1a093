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

#include "support.hpp"

#include <algorithm>

namespace regulus::testing {

TreeDescription random_description(std::mt19937_64& rng, Nat depth, TailRule tail) {
  TreeDescription d;
  d.depth = depth;
  d.tail = tail;
  d.bitmap.assign((Nat{1} << (depth + 1)) - 1, false);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution grow(0.42);

  BitString spine;
  d.bitmap[TreeDescription::position(spine)] = true;
  for (Nat i = 0; i < depth; ++i) {
    spine.push_back(coin(rng));
    d.bitmap[TreeDescription::position(spine)] = true;
  }
  // Random growth below every member, level by level.
  std::vector<BitString> level{BitString()};
  for (Nat l = 0; l < depth; ++l) {
    std::vector<BitString> next;
    for (const BitString& s : level) {
      for (bool b : {false, true}) {
        BitString child = s;
        child.push_back(b);
        const Nat pos = TreeDescription::position(child);
        if (!d.bitmap[pos] && grow(rng)) d.bitmap[pos] = true;
        if (d.bitmap[pos]) next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  d.validate();
  return d;
}

std::vector<CorpusTree> tree_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const TailRule tails[] = {TailRule::kAllExtensions, TailRule::kZeroExtensions, TailRule::kOneExtensions};
  std::vector<CorpusTree> corpus;
  for (std::size_t i = 0; i < count; ++i) {
    const Nat depth = 3 + i % 10;
    TreeDescription d = random_description(rng, depth, tails[i % 3]);
    BinaryTree tree = BinaryTree::from_description(d, "corpus-" + std::to_string(i));
    corpus.push_back(CorpusTree{std::move(d), std::move(tree)});
  }
  return corpus;
}

bool extends_to(const BinaryTree& tree, const BitString& s, Nat length) {
  if (!tree.member(s)) return false;
  if (s.size() >= length) return true;
  for (bool b : {false, true}) {
    BitString child = s;
    child.push_back(b);
    if (extends_to(tree, child, length)) return true;
  }
  return false;
}

Rational bisection_sqrt(const Rational& q, Nat k) {
  Rational lo(0);
  Rational hi = max(Rational(1), q);
  const Rational width = Rational::pow2(-static_cast<long>(k));
  while (hi - lo > width) {
    const Rational mid = (lo + hi) / Rational(2);
    if (mid * mid <= q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Rational grid_squared_distance(const ZeroSet& zeros, const Point& x, Nat grid_bits) {
  const Nat steps = Nat{1} << grid_bits;
  std::optional<Rational> best;
  for (Nat i = 0; i <= steps; ++i) {
    const Rational t(static_cast<long>(i), static_cast<long>(steps));
    Rational d2(0);
    for (std::size_t c = 0; c < x.size(); ++c) {
      const Rational p = zeros.a[c] + t * (zeros.b[c] - zeros.a[c]);
      d2 += (x[c] - p) * (x[c] - p);
    }
    if (!best || d2 < *best) best = d2;
    if (zeros.a == zeros.b) break;
  }
  return *best;
}

}  // namespace regulus::testing
