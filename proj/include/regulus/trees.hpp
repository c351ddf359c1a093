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

// Binary trees over finite 0/1 strings, tree moduli of regularity, the
// leftmost infinite path, and the embedding of a tree into a zero problem on
// Cantor space with the Baire metric.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regulus/modulus.hpp"
#include "regulus/spaces.hpp"

namespace regulus {

/// A finite string over {0,1}. Ordered lexicographically (a proper prefix
/// sorts first).
class BitString {
 public:
  BitString() = default;
  /// Parses "0110"; the empty text is the empty string.
  static BitString parse(std::string_view text);
  /// n copies of bit b.
  static BitString repeat(bool b, Nat n);

  Nat size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](Nat i) const { return bits_[i] != 0; }
  void push_back(bool b) { bits_.push_back(b ? 1 : 0); }
  void pop_back() { bits_.pop_back(); }
  /// The first n bits (the whole string if n >= size()).
  BitString prefix(Nat n) const;
  /// Length of the longest common prefix.
  Nat agreement(const BitString& other) const;
  std::string to_string() const;

  friend BitString operator+(BitString a, const BitString& b);
  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

/// What happens below the explicit depth of a finite tree description.
enum class TailRule {
  kAllExtensions,   // every extension of a member of length d0 is a member
  kZeroExtensions,  // only s * 0^j
  kOneExtensions,   // only s * 1^j
  kNone,            // nothing longer than d0
};

std::string_view to_string(TailRule rule);
std::optional<TailRule> parse_tail_rule(std::string_view text);

/// Membership of all strings of length <= depth, in (length, lexicographic)
/// order: string s sits at position 2^|s| - 1 + value(s), value read with the
/// first bit most significant.
struct TreeDescription {
  Nat depth = 0;
  std::vector<bool> bitmap;
  TailRule tail = TailRule::kNone;

  static Nat position(const BitString& s);
  /// Throws std::invalid_argument if the bitmap has the wrong size or is not
  /// prefix-closed.
  void validate() const;
};

/// A binary tree given by a decidable membership predicate.
class BinaryTree {
 public:
  using Member = std::function<bool(const BitString&)>;

  BinaryTree(Member member, std::string label);
  static BinaryTree from_description(TreeDescription description, std::string label = "described");

  /// Every string.
  static BinaryTree full();
  /// Strings of ones only; 1^oo is the single path.
  static BinaryTree all_ones();
  /// All 0^m, plus 1 * 0^j for 1 + j <= dead_length: the right branch dies
  /// at length dead_length, the leftmost path is 0^oo.
  static BinaryTree dead_right_branch(Nat dead_length = 6);
  /// All 1 * 0^m, plus 0^j for j <= dead_length: the left branch dies, so the
  /// leftmost path is 1 * 0^oo and small moduli pick the dead branch.
  static BinaryTree dead_left_branch(Nat dead_length = 6);

  bool member(const BitString& s) const { return member_(s); }
  const std::string& label() const { return label_; }
  const TreeDescription* description() const { return description_.get(); }

 private:
  Member member_;
  std::string label_;
  std::shared_ptr<const TreeDescription> description_;
};

/// Lexicographically least member of the given length, by depth-first search
/// that never enters a non-member.
std::optional<BitString> leftmost_member(const BinaryTree& tree, Nat length);

/// Bit k of the leftmost infinite path: bit k of the leftmost member of
/// length rho(k+1). Members are cached per length.
class LeftmostBranch {
 public:
  LeftmostBranch(BinaryTree tree, TreeRegularityModulus rho);

  /// Throws NoBranchAtDepth.
  bool bit(Nat k) const;
  /// Bits 0..k-1.
  BitString prefix(Nat k) const;
  /// The member string bit(k) was read from.
  BitString witness(Nat k) const;
  Nat witness_length(Nat k) const { return rho_(k + 1); }

 private:
  struct State;
  std::shared_ptr<State> state_;
  TreeRegularityModulus rho_;
};

LeftmostBranch leftmost_branch(BinaryTree tree, TreeRegularityModulus rho);

/// Independent oracle: level-by-level enumeration of all members, then the
/// least one of the requested length.
std::optional<BitString> brute_leftmost(const BinaryTree& tree, Nat depth);

/// All members of the given length, sorted, by level-by-level enumeration.
std::vector<BitString> brute_members(const BinaryTree& tree, Nat depth);

/// The leftmost member of length k; its extension by zeros is the k-th
/// iterate. Throws NoBranchAtDepth.
BitString leftmost_iteration(const BinaryTree& tree, Nat k);

/// Least valid tree modulus as seen from truncation depth D: rho(k) is the
/// least m >= k such that every member of length m has a k-prefix with a
/// member extension of length D. Values for k <= D; beyond D the table
/// continues with rho(k) = k, which is sound when no finite branch reaches
/// length D.
TreeRegularityModulus brute_tree_modulus(const BinaryTree& tree, Nat truncation_depth);

struct TreeModulusViolation {
  Nat k = 0;
  BitString member;  // of length rho(k), whose k-prefix dies before depth D
};

/// Checks the modulus on every member of length rho(k) for k <= k_max,
/// extendability judged at truncation depth D.
std::optional<TreeModulusViolation> check_tree_modulus(const BinaryTree& tree, const TreeRegularityModulus& rho,
                                                       Nat k_max, Nat truncation_depth);

enum class ModulusSense { kMetric, kTree };

/// metric -> tree adds one; tree -> metric keeps the modulus.
Modulus convert_modulus(ModulusSense from, ModulusSense to, const Modulus& rho);

// --- Cantor space embedding --------------------------------------------------

/// Point n of Cantor space is the eventually-zero sequence with bit i equal to
/// bit i of n (least significant first).
BitString cantor_prefix(Index n, Nat length);
Index cantor_index(const BitString& s);

/// Cantor space with the Baire metric 2^-(first difference)-1 and
/// alpha(k) = 2^k - 1.
CompactSpaceRep cantor_space();

/// F(h) = sum_i chi(h, i) 2^-i, chi(h, i) = 0 iff the i-prefix of h is a
/// member; this is 2^(1-j) for the least non-member prefix length j, or 0.
/// omega(k) = k + 1.
UcFunctionRep tree_embedding_function(const BinaryTree& tree);

struct EmbeddedProblem {
  CompactSpaceRep space;
  UcFunctionRep f;
};

EmbeddedProblem embed_as_metric_problem(const BinaryTree& tree);

}  // namespace regulus
