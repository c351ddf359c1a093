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

#include "regulus/problem.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace regulus {

namespace {

// Keys accepted per section; anything else is a parse error.
const std::map<std::string, std::set<std::string>, std::less<>>& schema() {
  static const std::map<std::string, std::set<std::string>, std::less<>> kSchema = {
      {"problem", {"kind", "depth", "out"}},
      {"space", {"kind"}},
      {"function", {"family", "point", "interval", "from", "to"}},
      {"regularity", {"affine", "table", "tail", "sense", "brute", "brute-depth"}},
      {"uniqueness", {"hilbert-bound", "affine", "table", "tail"}},
      {"tree", {"family", "length", "depth", "bitmap", "tail", "truncation-depth"}},
      {"modulus", {"affine", "table", "tail", "sense", "brute"}},
      {"fixture", {"prefix", "top", "gap", "rate", "iterates", "window"}},
      {"search", {"strategy"}},
  };
  return kSchema;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string where(std::string_view section, std::string_view key) {
  return "[" + std::string(section) + "] " + std::string(key);
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kZero: return "zero";
    case ProblemKind::kMinNorm: return "minnorm";
    case ProblemKind::kLeftmost: return "leftmost";
    case ProblemKind::kFejer: return "fejer";
  }
  return "?";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view text) {
  for (auto kind : {ProblemKind::kZero, ProblemKind::kMinNorm, ProblemKind::kLeftmost, ProblemKind::kFejer}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

Nat parse_nat(std::string_view text) {
  text = trim(text);
  Nat value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("not a natural number: '" + std::string(text) + "'");
  }
  return value;
}

ProblemSpec ProblemSpec::parse(std::string_view text, std::optional<ProblemKind> expected) {
  ProblemSpec spec;
  std::string current;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string at = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(at + "unterminated section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(current)) throw ParseError(at + "unknown section [" + current + "]");
      if (spec.sections_.contains(current)) throw ParseError(at + "duplicate section [" + current + "]");
      spec.sections_[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(at + "expected 'key = value'");
    if (current.empty()) throw ParseError(at + "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!schema().find(current)->second.contains(key)) throw ParseError(at + "unknown key " + where(current, key));
    auto& section = spec.sections_[current];
    if (section.contains(key)) throw ParseError(at + "duplicate key " + where(current, key));
    section.emplace(key, value);
  }
  if (spec.sections_.empty()) throw ParseError("empty problem file");

  if (const std::string* kind = spec.get("problem", "kind")) {
    const auto parsed = parse_problem_kind(*kind);
    if (!parsed) throw ParseError("unknown problem kind '" + *kind + "'");
    if (expected && *parsed != *expected) {
      throw ParseError("problem kind is " + *kind + ", expected " + std::string(to_string(*expected)));
    }
    spec.kind_ = *parsed;
  } else if (expected) {
    spec.kind_ = *expected;
  } else {
    throw ParseError("missing [problem] kind");
  }
  if (auto depth = spec.get_nat("problem", "depth")) spec.depth_ = *depth;
  if (const std::string* out = spec.get("problem", "out")) {
    if (*out == "csv") {
      spec.format_ = OutputFormat::kCsv;
    } else if (*out == "json") {
      spec.format_ = OutputFormat::kJson;
    } else {
      throw ParseError("[problem] out must be csv or json, got '" + *out + "'");
    }
  }
  return spec;
}

ProblemSpec ProblemSpec::load(const std::filesystem::path& path, std::optional<ProblemKind> expected) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), expected);
}

bool ProblemSpec::has_section(std::string_view name) const { return sections_.contains(name); }

const std::string* ProblemSpec::get(std::string_view section, std::string_view key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto v = s->second.find(key);
  return v == s->second.end() ? nullptr : &v->second;
}

const std::string& ProblemSpec::require(std::string_view section, std::string_view key) const {
  if (const std::string* value = get(section, key)) return *value;
  throw ParseError("missing " + where(section, key));
}

std::optional<Nat> ProblemSpec::get_nat(std::string_view section, std::string_view key) const {
  const std::string* value = get(section, key);
  if (!value) return std::nullopt;
  try {
    return parse_nat(*value);
  } catch (const ParseError& e) {
    throw ParseError(where(section, key) + ": " + e.what());
  }
}

std::optional<Rational> ProblemSpec::get_rational(std::string_view section, std::string_view key) const {
  const auto values = get_rationals(section, key);
  if (!values) return std::nullopt;
  if (values->size() != 1) throw ParseError(where(section, key) + ": expected one rational");
  return values->front();
}

std::optional<std::vector<Rational>> ProblemSpec::get_rationals(std::string_view section,
                                                                std::string_view key) const {
  const std::string* value = get(section, key);
  if (!value) return std::nullopt;
  std::vector<Rational> out;
  for (std::string_view w : words(*value)) {
    try {
      out.push_back(Rational::parse(w));
    } catch (const std::exception& e) {
      throw ParseError(where(section, key) + ": not a rational: '" + std::string(w) + "'");
    }
  }
  return out;
}

std::optional<std::vector<Nat>> ProblemSpec::get_nats(std::string_view section, std::string_view key) const {
  const std::string* value = get(section, key);
  if (!value) return std::nullopt;
  std::vector<Nat> out;
  try {
    for (std::string_view w : words(*value)) out.push_back(parse_nat(w));
  } catch (const ParseError& e) {
    throw ParseError(where(section, key) + ": " + e.what());
  }
  return out;
}

std::optional<Modulus> ProblemSpec::get_modulus(std::string_view section) const {
  const auto affine = get_nats(section, "affine");
  const auto table = get_nats(section, "table");
  if (affine && table) throw ParseError("[" + std::string(section) + "] has both affine and table");
  if (affine) {
    if (affine->size() != 2) throw ParseError(where(section, "affine") + ": expected 'u v'");
    return Modulus::affine((*affine)[0], (*affine)[1]);
  }
  if (table) {
    Nat tail_u = 1;
    Nat tail_v = 0;
    if (const auto tail = get_nats(section, "tail")) {
      if (tail->size() != 2) throw ParseError(where(section, "tail") + ": expected 'u v'");
      tail_u = (*tail)[0];
      tail_v = (*tail)[1];
    }
    return Modulus::table(*table, tail_u, tail_v);
  }
  if (get(section, "tail")) throw ParseError(where(section, "tail") + " without a table");
  return std::nullopt;
}

std::string decimal(const Rational& q, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpz_class scaled = (q * Rational(scale, mpz_class(1))).floor();
  const bool negative = scaled < 0;
  mpz_class magnitude = negative ? mpz_class(-scaled) : scaled;
  std::string s = magnitude.get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (negative ? "-" : "") + s;
}

}  // namespace regulus
