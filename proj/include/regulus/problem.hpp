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

// Problem definition files: a flat text format with named sections,
//
//   [problem]
//   kind = zero
//   depth = 8
//
// one "key = value" per line, '#' starts a comment. Every rational is "p/q"
// or an integer.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regulus/errors.hpp"
#include "regulus/modulus.hpp"

namespace regulus {

enum class ProblemKind { kZero, kMinNorm, kLeftmost, kFejer };

std::string_view to_string(ProblemKind kind);
std::optional<ProblemKind> parse_problem_kind(std::string_view text);

enum class OutputFormat { kCsv, kJson };

/// Parsed but not yet interpreted problem file: section -> key -> value.
class ProblemSpec {
 public:
  using Section = std::map<std::string, std::string, std::less<>>;

  /// Throws ParseError on syntax errors, duplicate keys, unknown sections or
  /// keys, and on an empty file. With expected set, [problem] kind may be
  /// omitted but must match when present.
  static ProblemSpec parse(std::string_view text, std::optional<ProblemKind> expected = std::nullopt);
  static ProblemSpec load(const std::filesystem::path& path, std::optional<ProblemKind> expected = std::nullopt);

  ProblemKind kind() const { return kind_; }
  Nat depth() const { return depth_; }
  OutputFormat format() const { return format_; }

  bool has_section(std::string_view name) const;
  /// Null when the key is absent.
  const std::string* get(std::string_view section, std::string_view key) const;
  /// Throws ParseError when absent.
  const std::string& require(std::string_view section, std::string_view key) const;

  std::optional<Nat> get_nat(std::string_view section, std::string_view key) const;
  std::optional<Rational> get_rational(std::string_view section, std::string_view key) const;
  std::optional<std::vector<Rational>> get_rationals(std::string_view section, std::string_view key) const;
  std::optional<std::vector<Nat>> get_nats(std::string_view section, std::string_view key) const;

  /// A modulus from "affine = u v", or "table = v0 v1 ..." with an optional
  /// "tail = u v" (default: k). Null when the section has neither.
  std::optional<Modulus> get_modulus(std::string_view section) const;

 private:
  std::map<std::string, Section, std::less<>> sections_;
  ProblemKind kind_ = ProblemKind::kZero;
  Nat depth_ = 8;
  OutputFormat format_ = OutputFormat::kCsv;
};

/// Parses a natural number, rejecting signs, junk and overflow.
Nat parse_nat(std::string_view text);

/// floor(q * 10^digits) / 10^digits in positional notation, e.g. "0.333333".
std::string decimal(const Rational& q, int digits = 12);

}  // namespace regulus
