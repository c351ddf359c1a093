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

#include "regulus/trees.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "regulus/errors.hpp"

namespace regulus {

BitString BitString::parse(std::string_view text) {
  BitString s;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may only contain 0 and 1");
    s.push_back(c == '1');
  }
  return s;
}

BitString BitString::repeat(bool b, Nat n) {
  BitString s;
  s.bits_.assign(n, b ? 1 : 0);
  return s;
}

BitString BitString::prefix(Nat n) const {
  BitString s;
  s.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min<Nat>(n, size())));
  return s;
}

Nat BitString::agreement(const BitString& other) const {
  const Nat n = std::min(size(), other.size());
  Nat i = 0;
  while (i < n && bits_[i] == other.bits_[i]) ++i;
  return i;
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

BitString operator+(BitString a, const BitString& b) {
  a.bits_.insert(a.bits_.end(), b.bits_.begin(), b.bits_.end());
  return a;
}

std::string_view to_string(TailRule rule) {
  switch (rule) {
    case TailRule::kAllExtensions:
      return "all-extensions";
    case TailRule::kZeroExtensions:
      return "zero-extensions-only";
    case TailRule::kOneExtensions:
      return "one-extensions-only";
    case TailRule::kNone:
      return "none";
  }
  return "none";
}

std::optional<TailRule> parse_tail_rule(std::string_view text) {
  for (TailRule r : {TailRule::kAllExtensions, TailRule::kZeroExtensions, TailRule::kOneExtensions, TailRule::kNone}) {
    if (text == to_string(r)) return r;
  }
  return std::nullopt;
}

Nat TreeDescription::position(const BitString& s) {
  if (s.size() >= 63) throw std::out_of_range("string too long for a tree description");
  Nat value = 0;
  for (Nat i = 0; i < s.size(); ++i) value = (value << 1) | (s[i] ? 1 : 0);
  return (Nat{1} << s.size()) - 1 + value;
}

void TreeDescription::validate() const {
  if (depth >= 30) throw std::invalid_argument("tree description depth must be below 30");
  const Nat expected = (Nat{1} << (depth + 1)) - 1;
  if (bitmap.size() != expected) {
    throw std::invalid_argument("tree bitmap has " + std::to_string(bitmap.size()) + " entries, expected " +
                                std::to_string(expected) + " for depth " + std::to_string(depth));
  }
  // Position p > 0 has parent (p - 1) / 2 in this order.
  for (Nat p = 1; p < expected; ++p) {
    if (bitmap[p] && !bitmap[(p - 1) / 2]) {
      throw std::invalid_argument("tree bitmap is not prefix-closed at position " + std::to_string(p));
    }
  }
}

BinaryTree::BinaryTree(Member member, std::string label) : member_(std::move(member)), label_(std::move(label)) {}

BinaryTree BinaryTree::from_description(TreeDescription description, std::string label) {
  description.validate();
  auto shared = std::make_shared<const TreeDescription>(std::move(description));
  BinaryTree tree(
      [d = shared](const BitString& s) {
        if (s.size() <= d->depth) return static_cast<bool>(d->bitmap[TreeDescription::position(s)]);
        if (!d->bitmap[TreeDescription::position(s.prefix(d->depth))]) return false;
        switch (d->tail) {
          case TailRule::kAllExtensions:
            return true;
          case TailRule::kNone:
            return false;
          case TailRule::kZeroExtensions:
          case TailRule::kOneExtensions: {
            const bool want = d->tail == TailRule::kOneExtensions;
            for (Nat i = d->depth; i < s.size(); ++i) {
              if (s[i] != want) return false;
            }
            return true;
          }
        }
        return false;
      },
      std::move(label));
  tree.description_ = std::move(shared);
  return tree;
}

BinaryTree BinaryTree::full() {
  return BinaryTree([](const BitString&) { return true; }, "full");
}

BinaryTree BinaryTree::all_ones() {
  return BinaryTree(
      [](const BitString& s) {
        for (Nat i = 0; i < s.size(); ++i) {
          if (!s[i]) return false;
        }
        return true;
      },
      "all-ones");
}

namespace {

// s == first * 0^j for some j.
bool is_bit_then_zeros(const BitString& s, bool first) {
  if (s.empty()) return true;
  if (s[0] != first) return false;
  for (Nat i = 1; i < s.size(); ++i) {
    if (s[i]) return false;
  }
  return true;
}

}  // namespace

BinaryTree BinaryTree::dead_right_branch(Nat dead_length) {
  return BinaryTree(
      [dead_length](const BitString& s) {
        return is_bit_then_zeros(s, false) || (is_bit_then_zeros(s, true) && s.size() <= dead_length);
      },
      "dead-right-branch");
}

BinaryTree BinaryTree::dead_left_branch(Nat dead_length) {
  return BinaryTree(
      [dead_length](const BitString& s) {
        return is_bit_then_zeros(s, true) || (is_bit_then_zeros(s, false) && s.size() <= dead_length);
      },
      "dead-left-branch");
}

namespace {

bool leftmost_dfs(const BinaryTree& tree, BitString& current, Nat length) {
  if (!tree.member(current)) return false;
  if (current.size() == length) return true;
  for (bool b : {false, true}) {
    current.push_back(b);
    if (leftmost_dfs(tree, current, length)) return true;
    current.pop_back();
  }
  return false;
}

}  // namespace

std::optional<BitString> leftmost_member(const BinaryTree& tree, Nat length) {
  BitString current;
  if (leftmost_dfs(tree, current, length)) return current;
  return std::nullopt;
}

struct LeftmostBranch::State {
  explicit State(BinaryTree t) : tree(std::move(t)) {}
  BinaryTree tree;
  std::mutex mutex;
  std::unordered_map<Nat, BitString> by_length;

  BitString member_of_length(Nat length) {
    std::lock_guard lock(mutex);
    if (auto it = by_length.find(length); it != by_length.end()) return it->second;
    auto found = leftmost_member(tree, length);
    if (!found) throw NoBranchAtDepth(length);
    by_length.emplace(length, *found);
    return *found;
  }
};

LeftmostBranch::LeftmostBranch(BinaryTree tree, TreeRegularityModulus rho)
    : state_(std::make_shared<State>(std::move(tree))), rho_(std::move(rho)) {}

BitString LeftmostBranch::witness(Nat k) const { return state_->member_of_length(rho_(k + 1)); }

bool LeftmostBranch::bit(Nat k) const { return witness(k)[k]; }

BitString LeftmostBranch::prefix(Nat k) const {
  BitString out;
  for (Nat i = 0; i < k; ++i) out.push_back(bit(i));
  return out;
}

LeftmostBranch leftmost_branch(BinaryTree tree, TreeRegularityModulus rho) {
  return LeftmostBranch(std::move(tree), std::move(rho));
}

std::vector<BitString> brute_members(const BinaryTree& tree, Nat depth) {
  std::vector<BitString> level;
  if (tree.member(BitString())) level.emplace_back();
  for (Nat d = 0; d < depth && !level.empty(); ++d) {
    std::vector<BitString> next;
    for (const BitString& s : level) {
      for (bool b : {false, true}) {
        BitString child = s;
        child.push_back(b);
        if (tree.member(child)) next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

std::optional<BitString> brute_leftmost(const BinaryTree& tree, Nat depth) {
  std::vector<BitString> members = brute_members(tree, depth);
  if (members.empty()) return std::nullopt;
  return members.front();
}

BitString leftmost_iteration(const BinaryTree& tree, Nat k) {
  auto found = leftmost_member(tree, k);
  if (!found) throw NoBranchAtDepth(k);
  return *found;
}

namespace {

// For every level 0..D, the sorted members that have a member extension of
// length D.
std::vector<std::vector<BitString>> extendable_levels(const BinaryTree& tree, Nat truncation_depth) {
  std::vector<std::vector<BitString>> levels(truncation_depth + 1);
  levels[truncation_depth] = brute_members(tree, truncation_depth);
  for (Nat d = truncation_depth; d > 0; --d) {
    for (const BitString& s : levels[d]) {
      BitString p = s.prefix(d - 1);
      if (levels[d - 1].empty() || levels[d - 1].back() != p) levels[d - 1].push_back(std::move(p));
    }
  }
  return levels;
}

bool is_extendable(const std::vector<std::vector<BitString>>& levels, const BitString& s) {
  const auto& level = levels[s.size()];
  return std::binary_search(level.begin(), level.end(), s);
}

}  // namespace

TreeRegularityModulus brute_tree_modulus(const BinaryTree& tree, Nat truncation_depth) {
  const auto levels = extendable_levels(tree, truncation_depth);
  std::vector<std::vector<BitString>> members(truncation_depth + 1);
  for (Nat m = 0; m <= truncation_depth; ++m) members[m] = brute_members(tree, m);
  std::vector<Nat> table;
  for (Nat k = 0; k <= truncation_depth; ++k) {
    Nat m = k;
    for (; m <= truncation_depth; ++m) {
      const bool ok = std::all_of(members[m].begin(), members[m].end(),
                                  [&](const BitString& s) { return is_extendable(levels, s.prefix(k)); });
      if (ok) break;
    }
    table.push_back(m);
  }
  return TreeRegularityModulus(Modulus::table(std::move(table), 1, 0));
}

std::optional<TreeModulusViolation> check_tree_modulus(const BinaryTree& tree, const TreeRegularityModulus& rho,
                                                       Nat k_max, Nat truncation_depth) {
  const auto levels = extendable_levels(tree, truncation_depth);
  for (Nat k = 0; k <= k_max && k <= truncation_depth; ++k) {
    const Nat m = rho(k);
    if (m > truncation_depth) continue;
    for (const BitString& s : brute_members(tree, m)) {
      if (!is_extendable(levels, s.prefix(k))) return TreeModulusViolation{k, s};
    }
  }
  return std::nullopt;
}

Modulus convert_modulus(ModulusSense from, ModulusSense to, const Modulus& rho) {
  if (from == ModulusSense::kMetric && to == ModulusSense::kTree) {
    return Modulus([rho](Nat k) { return saturating_add(rho(k), 1); }, "(" + rho.description() + ")+1");
  }
  return rho;
}

BitString cantor_prefix(Index n, Nat length) {
  BitString s;
  for (Nat i = 0; i < length; ++i) s.push_back(i < 64 && ((n >> i) & 1));
  return s;
}

Index cantor_index(const BitString& s) {
  Index n = 0;
  for (Nat i = 0; i < s.size(); ++i) {
    if (!s[i]) continue;
    if (i >= 64) throw std::out_of_range("cantor_index: set bit beyond position 63");
    n |= Index{1} << i;
  }
  return n;
}

CompactSpaceRep cantor_space() {
  return CompactSpaceRep{
      .dist =
          [](Index i, Index j) {
            if (i == j) return RealName();
            const auto first = static_cast<long>(std::countr_zero(i ^ j));
            return RealName::exact(Rational::pow2(-first - 1));
          },
      .alpha = Modulus([](Nat k) { return k >= 64 ? kNatMax : (Nat{1} << k) - 1; }, "2^k-1"),
      .label = "Cantor space",
      .describe =
          [](Index n) {
            return cantor_prefix(n, static_cast<Nat>(std::bit_width(n))).to_string() + "|0^oo";
          },
      .coordinates = nullptr,
      .grid = nullptr,
  };
}

UcFunctionRep tree_embedding_function(const BinaryTree& tree) {
  return UcFunctionRep{
      .value =
          [tree](Index n) {
            return RealName::from_approximator([tree, n](Nat k) {
              // Prefixes of length up to k+1 decide F to within 2^-k-1.
              BitString prefix;
              for (Nat j = 0; j <= k + 1; ++j) {
                if (!tree.member(prefix)) return Rational::pow2(1 - static_cast<long>(j));
                prefix.push_back(j < 64 && ((n >> j) & 1));
              }
              return Rational(0);
            });
          },
      .omega = Modulus::affine(1, 1),
      .label = "tree-embedding(" + tree.label() + ")",
  };
}

EmbeddedProblem embed_as_metric_problem(const BinaryTree& tree) {
  return EmbeddedProblem{cantor_space(), tree_embedding_function(tree)};
}

}  // namespace regulus
