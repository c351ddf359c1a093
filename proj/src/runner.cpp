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

#include "regulus/runner.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "json.hpp"

namespace regulus {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

Rational pow2(long e) { return Rational::pow2(e); }
long neg(Nat n) { return -static_cast<long>(n); }

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// --- tables ------------------------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;
};

std::string csv_cell(const json& value) {
  if (value.is_null()) return "";
  std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string render(const Table& table, OutputFormat format, ProblemKind kind, Nat depth) {
  if (format == OutputFormat::kJson) {
    json doc;
    doc["kind"] = to_string(kind);
    doc["depth"] = depth;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const json& row : table.rows) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const auto it = row.find(table.columns[c]);
      out << (c ? "," : "") << (it == row.end() ? "" : csv_cell(*it));
    }
    out << "\n";
  }
  return out.str();
}

// --- builders ----------------------------------------------------------------

template <typename Fn>
auto as_parse_error(const std::string& context, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ParseError(context + ": " + e.what());
  }
}

Point require_point(const ProblemSpec& spec, std::string_view key) {
  auto values = spec.get_rationals("function", key);
  if (!values) throw ParseError("missing [function] " + std::string(key));
  return *values;
}

MonotoneSequenceFixture build_fixture(const ProblemSpec& spec) {
  if (!spec.has_section("fixture")) throw ParseError("missing [fixture] section");
  MonotoneSequenceFixture fix;
  if (auto prefix = spec.get_rationals("fixture", "prefix")) fix.prefix = *prefix;
  if (auto top = spec.get_rational("fixture", "top")) fix.top = *top;
  if (auto gap = spec.get_rational("fixture", "gap")) fix.gap = *gap;
  as_parse_error("[fixture]", [&] {
    fix.validate();
    return 0;
  });
  return fix;
}

std::string function_family(const ProblemSpec& spec) { return spec.require("function", "family"); }

std::string space_kind(const ProblemSpec& spec) {
  if (const std::string* kind = spec.get("space", "kind")) return *kind;
  const std::string family = spec.get("function", "family") ? function_family(spec) : "";
  if (family == "tree-embedding") return "cantor";
  if (family == "distance-to-line-segment-2d") return "square";
  if (const auto point = spec.get_rationals("function", "point"); point && point->size() == 2) return "square";
  return "interval";
}

CompactSpaceRep build_coordinate_space(const ProblemSpec& spec) {
  const std::string kind = space_kind(spec);
  if (kind == "interval") return interval_space();
  if (kind == "square") return product_space(interval_space(), interval_space());
  throw ParseError("[space] kind must be interval or square here, got '" + kind + "'");
}

FunctionInstance build_function(const ProblemSpec& spec, const CompactSpaceRep& space) {
  const std::string family = function_family(spec);
  return as_parse_error("[function] " + family, [&]() -> FunctionInstance {
    if (family == "abs-distance-to-point") return abs_distance_to_point(space, require_point(spec, "point"));
    if (family == "squared-distance") return squared_distance_to_point(space, require_point(spec, "point"));
    if (family == "distance-to-interval") {
      const Point interval = require_point(spec, "interval");
      if (interval.size() != 2) throw ParseError("[function] interval: expected 'lo hi'");
      return distance_to_interval(space, interval[0], interval[1]);
    }
    if (family == "distance-to-line-segment-2d") {
      return distance_to_segment(space, require_point(spec, "from"), require_point(spec, "to"));
    }
    if (family == "monotone-fixture") return fixture_residual_function(space, build_fixture(spec));
    if (family == "constant-zero") return constant_zero(space, space.coordinates(0).size());
    throw ParseError("unknown function family '" + family + "'");
  });
}

ModulusSense parse_sense(const ProblemSpec& spec, std::string_view section, ModulusSense fallback) {
  const std::string* sense = spec.get(section, "sense");
  if (!sense) return fallback;
  if (*sense == "metric") return ModulusSense::kMetric;
  if (*sense == "tree") return ModulusSense::kTree;
  throw ParseError("[" + std::string(section) + "] sense must be metric or tree");
}

Nat brute_depth(const ProblemSpec& spec, Nat n_max) {
  return spec.get_nat("regularity", "brute-depth").value_or(2 * n_max + 8);
}

RegularityModulus build_regularity(const ProblemSpec& spec, const FunctionInstance& fi) {
  if (auto m = spec.get_modulus("regularity")) {
    return RegularityModulus(convert_modulus(parse_sense(spec, "regularity", ModulusSense::kMetric),
                                             ModulusSense::kMetric, *m));
  }
  if (auto n_max = spec.get_nat("regularity", "brute")) {
    const Point probe = fi.zeros.a;
    if (probe.size() != 1 || !fi.function.lipschitz_exponent) {
      throw ParseError("[regularity] brute is only available for families on [0,1]");
    }
    return brute_regularity_modulus(fi.evaluator, fi.zeros, *fi.function.lipschitz_exponent, *n_max,
                                    brute_depth(spec, *n_max));
  }
  throw ParseError("missing [regularity] affine, table or brute");
}

bool has_extension(const BinaryTree& tree, BitString& s, Nat length) {
  if (!tree.member(s)) return false;
  if (s.size() >= length) return true;
  for (bool b : {false, true}) {
    s.push_back(b);
    const bool found = has_extension(tree, s, length);
    s.pop_back();
    if (found) return true;
  }
  return false;
}

Nat default_truncation(const ProblemSpec& spec, Nat needed) {
  return spec.get_nat("tree", "truncation-depth").value_or(std::clamp<Nat>(needed + 4, 12, 20));
}

// --- verify helpers ----------------------------------------------------------

// d(a_i, a_j) < 2^-n + 2^-n-4, certified by one approximation.
bool cauchy_close(const CompactSpaceRep& space, Index i, Index j, Nat n) {
  const Nat q = n + 6;
  return space.dist(i, j).approx(q) + pow2(neg(q)) < pow2(neg(n)) + pow2(neg(n + 4));
}

bool within_rate(const ZeroSet& zeros, const Point& x, Nat k) {
  const Rational bound = pow2(neg(k)) + pow2(neg(k + 4));
  return squared_distance(zeros, x) <= bound * bound;
}

// --- zero --------------------------------------------------------------------

RunResult run_zero(const ProblemSpec& spec, Nat depth, const RunOptions& options, OutputFormat format) {
  ZeroSetup setup = build_zero_problem(spec, depth);
  const ZeroProblem& problem = setup.problem;
  ZeroApproximationSequence sequence(problem, SearchOptions::from_environment());

  Table table{{"k", "beta", "point", "level", "search_bound", "f_precision", "f_approx", "f_threshold",
               "d_precision", "d_approx", "d_threshold"},
              {}};
  if (options.timing) table.columns.push_back("wall_ms");
  json steps = json::array();
  for (Nat k = 0; k <= depth; ++k) {
    const auto start = Clock::now();
    sequence.beta(k);
    const double ms = elapsed_ms(start);
    const ZeroCertificate c = sequence.certificate(k);
    json row;
    row["k"] = k;
    row["beta"] = c.index;
    row["point"] = problem.space.describe(c.index);
    row["level"] = c.level;
    row["search_bound"] = c.search_bound;
    row["f_precision"] = c.f_precision;
    row["f_approx"] = c.f_approx.to_string();
    row["f_threshold"] = c.f_threshold.to_string();
    if (c.previous_index) {
      row["d_precision"] = c.d_precision;
      row["d_approx"] = c.d_approx.to_string();
      row["d_threshold"] = c.d_threshold.to_string();
    } else {
      row["d_precision"] = nullptr;
      row["d_approx"] = nullptr;
      row["d_threshold"] = nullptr;
    }
    json step = row;
    if (c.previous_index) step["previous_index"] = *c.previous_index;
    steps.push_back(step);
    if (options.timing) row["wall_ms"] = ms;
    table.rows.push_back(std::move(row));
  }

  RunResult result{ProblemKind::kZero, depth, render(table, format, ProblemKind::kZero, depth), {}, {}};
  json cert;
  cert["kind"] = "zero";
  cert["space"] = problem.space.label;
  cert["function"] = problem.f.label;
  cert["regularity"] = problem.rho.description();
  cert["depth"] = depth;
  cert["steps"] = steps;

  if (options.verify) {
    json verify;
    const ZeroVerifyReport report = verify_certificate(problem, sequence.certificates(depth), depth);
    json rows = json::array();
    for (const ZeroCheck& check : report.rows) {
      rows.push_back({{"k", check.k}, {"pass", check.pass}, {"matches_stored", check.matches_stored},
                      {"implied_pass", check.implied_pass}, {"f_bound", check.f_bound.to_string()}});
      if (!check.pass) result.divergences.push_back("certificate of k=" + std::to_string(check.k) + " does not re-verify");
    }
    verify["certificates"] = rows;

    Nat cauchy_failures = 0;
    for (Nat n = 0; n <= depth; ++n) {
      for (Nat m = n + 1; m <= depth; ++m) {
        if (!cauchy_close(problem.space, sequence.beta(m), sequence.beta(n), n)) {
          ++cauchy_failures;
          result.divergences.push_back("d(x_" + std::to_string(m) + ", x_" + std::to_string(n) +
                                       ") is not below 2^-n + 2^-n-4");
        }
      }
    }
    verify["cauchy_failures"] = cauchy_failures;

    if (setup.zeros && problem.space.coordinates) {
      json distance = json::array();
      for (Nat k = 0; k <= depth; ++k) {
        const Point x = problem.space.coordinates(sequence.beta(k));
        const bool ok = within_rate(*setup.zeros, x, k);
        distance.push_back({{"k", k}, {"squared_distance", squared_distance(*setup.zeros, x).to_string()}, {"pass", ok}});
        if (!ok) result.divergences.push_back("x_" + std::to_string(k) + " is farther than 2^-k + 2^-k-4 from the zero set");
      }
      verify["distance_to_zero_set"] = distance;
      const Nat samples = Nat{1} << 12;
      const auto violation = sample_regularity(problem.space, problem.f, problem.rho, *setup.zeros, depth, samples);
      verify["regularity_samples"] = samples;
      if (violation) {
        verify["regularity_violation"] = {{"n", violation->n},
                                          {"index", violation->index},
                                          {"point", problem.space.describe(violation->index)},
                                          {"squared_distance", violation->squared_distance.to_string()}};
        result.divergences.push_back("regularity modulus fails at n=" + std::to_string(violation->n) + ": F(" +
                                     problem.space.describe(violation->index) + ") < 2^-rho(n) but the point is " +
                                     "not within 2^-n of the zero set");
      }
    }
    if (setup.tree) {
      json extension = json::array();
      for (Nat k = 0; k <= depth; ++k) {
        BitString prefix = cantor_prefix(sequence.beta(k), k);
        const bool ok = has_extension(*setup.tree, prefix, setup.truncation_depth);
        extension.push_back({{"k", k}, {"prefix", prefix.to_string()}, {"extends", ok}});
        if (!ok) {
          result.divergences.push_back("the " + std::to_string(k) + "-prefix of x_" + std::to_string(k) +
                                       " has no member extension of length " + std::to_string(setup.truncation_depth));
        }
      }
      verify["truncation_depth"] = setup.truncation_depth;
      verify["prefix_extensions"] = extension;
    }
    verify["divergences"] = result.divergences;
    cert["verify"] = verify;
  }
  result.certificate = cert.dump(2) + "\n";
  return result;
}

// --- minnorm -----------------------------------------------------------------

RunResult run_min_norm(const ProblemSpec& spec, Nat depth, const RunOptions& options, OutputFormat format) {
  MinNormSetup setup = build_min_norm_problem(spec);
  const MinNormProblem& problem = setup.problem;
  const CompactSpaceRep& space = problem.rep.base;

  Table table{{"k", "K", "L", "admissible_count", "n_k", "point", "norm_approx", "norm_decimal", "strategy",
               "evaluated"},
              {}};
  if (options.timing) table.columns.push_back("wall_ms");
  MinNormResult outcome;
  json steps = json::array();
  for (Nat k = 0; k <= depth; ++k) {
    const auto start = Clock::now();
    outcome.steps.push_back(min_norm_step(problem, k, setup.options));
    const double ms = elapsed_ms(start);
    const MinNormCertificate& c = outcome.steps.back();
    json row;
    row["k"] = k;
    row["K"] = c.K;
    row["L"] = c.L;
    row["admissible_count"] = c.admissible_count ? json(*c.admissible_count) : json(nullptr);
    row["n_k"] = c.index;
    row["point"] = space.describe(c.index);
    row["norm_approx"] = c.norm_approx.to_string();
    row["norm_decimal"] = decimal(c.norm_approx);
    row["strategy"] = c.strategy;
    row["evaluated"] = c.evaluated;
    json step{{"k", k},
              {"p", c.p},
              {"rho_p", c.rho_p},
              {"K", c.K},
              {"L", c.L},
              {"threshold", c.threshold.to_string()},
              {"index", c.index},
              {"point", space.describe(c.index)},
              {"f_approx", c.f_approx.to_string()},
              {"norm_approx", c.norm_approx.to_string()},
              {"admissible_count", row["admissible_count"]},
              {"strategy", c.strategy},
              {"evaluated", c.evaluated}};
    json contenders = json::array();
    for (const Contender& ct : c.contenders) {
      contenders.push_back({{"index", ct.index},
                            {"point", space.describe(ct.index)},
                            {"f_approx", ct.f_approx.to_string()},
                            {"norm_approx", ct.norm_approx.to_string()}});
    }
    step["contenders"] = contenders;
    steps.push_back(step);
    if (options.timing) row["wall_ms"] = ms;
    table.rows.push_back(std::move(row));
  }

  RunResult result{ProblemKind::kMinNorm, depth, render(table, format, ProblemKind::kMinNorm, depth), {}, {}};
  json cert;
  cert["kind"] = "minnorm";
  cert["space"] = space.label;
  cert["function"] = problem.f.label;
  cert["regularity"] = problem.rho.description();
  cert["uniqueness"] = problem.phi.description();
  cert["norm_bound"] = problem.rep.norm_bound;
  cert["depth"] = depth;
  cert["steps"] = steps;

  if (options.verify) {
    json verify;
    const MinNormVerifyReport report = verify_min_norm(problem, outcome, depth);
    json rows = json::array();
    for (const MinNormCheck& check : report.rows) {
      json row{{"k", check.k}, {"pass", check.pass}};
      if (check.argmin_exhaustive) row["argmin_exhaustive"] = *check.argmin_exhaustive;
      rows.push_back(row);
      if (!check.pass) result.divergences.push_back("minimal-norm step k=" + std::to_string(check.k) + " does not re-verify");
    }
    verify["certificates"] = rows;
    const Point z0 = min_norm_point(setup.zeros);
    json distance = json::array();
    for (Nat k = 0; k <= depth; ++k) {
      const Point x = space.coordinates(outcome.index(k));
      const bool ok = within_rate(ZeroSet{z0, z0}, x, k);
      distance.push_back({{"k", k}, {"pass", ok}});
      if (!ok) result.divergences.push_back("a_{n_" + std::to_string(k) + "} is farther than 2^-k + 2^-k-4 from the minimal-norm zero");
    }
    verify["distance_to_min_norm_zero"] = distance;
    const Nat samples = Nat{1} << 12;
    const auto violation = sample_regularity(space, problem.f, problem.rho, setup.zeros, depth, samples);
    verify["regularity_samples"] = samples;
    if (violation) {
      verify["regularity_violation"] = {{"n", violation->n}, {"index", violation->index},
                                        {"point", space.describe(violation->index)}};
      result.divergences.push_back("regularity modulus fails at n=" + std::to_string(violation->n) + " at " +
                                   space.describe(violation->index));
    }
    verify["divergences"] = result.divergences;
    cert["verify"] = verify;
  }
  result.certificate = cert.dump(2) + "\n";
  return result;
}

// --- leftmost ----------------------------------------------------------------

RunResult run_leftmost(const ProblemSpec& spec, Nat depth, const RunOptions& options, OutputFormat format) {
  LeftmostSetup setup = build_leftmost_problem(spec, depth);
  LeftmostBranch branch(setup.tree, setup.rho);

  Table table{{"k", "bit", "witness_length", "witness", "prefix"}, {}};
  if (options.timing) table.columns.push_back("wall_ms");
  json steps = json::array();
  BitString prefix;
  for (Nat k = 0; k <= depth; ++k) {
    const auto start = Clock::now();
    const bool bit = branch.bit(k);
    const double ms = elapsed_ms(start);
    prefix.push_back(bit);
    json row{{"k", k},
             {"bit", bit ? 1 : 0},
             {"witness_length", branch.witness_length(k)},
             {"witness", branch.witness(k).to_string()},
             {"prefix", prefix.to_string()}};
    steps.push_back(row);
    if (options.timing) row["wall_ms"] = ms;
    table.rows.push_back(std::move(row));
  }

  RunResult result{ProblemKind::kLeftmost, depth, render(table, format, ProblemKind::kLeftmost, depth), {}, {}};
  json cert;
  cert["kind"] = "leftmost";
  cert["tree"] = setup.tree.label();
  cert["modulus"] = setup.rho.description();
  cert["depth"] = depth;
  cert["steps"] = steps;

  if (options.verify) {
    json verify;
    const Nat D = setup.truncation_depth;
    verify["truncation_depth"] = D;
    if (const auto violation = check_tree_modulus(setup.tree, setup.rho, depth + 1, D)) {
      verify["modulus_violation"] = {{"k", violation->k}, {"member", violation->member.to_string()}};
      result.divergences.push_back("tree modulus fails at k=" + std::to_string(violation->k) + ": member " +
                                   violation->member.to_string() + " has a " + std::to_string(violation->k) +
                                   "-prefix without extension of length " + std::to_string(D));
    }
    if (D <= depth) {
      result.divergences.push_back("truncation depth " + std::to_string(D) + " does not exceed depth " +
                                   std::to_string(depth));
    } else if (const auto expected = brute_leftmost(setup.tree, D)) {
      verify["exhaustive_prefix"] = expected->prefix(depth + 1).to_string();
      for (Nat k = 0; k <= depth; ++k) {
        if ((*expected)[k] != prefix[k]) {
          result.divergences.push_back("bit " + std::to_string(k) + " is " + std::to_string(prefix[k] ? 1 : 0) +
                                       " but exhaustive search to depth " + std::to_string(D) + " gives " +
                                       std::to_string((*expected)[k] ? 1 : 0));
        }
      }
    } else {
      result.divergences.push_back("no member of length " + std::to_string(D) + " in exhaustive search");
    }
    verify["divergences"] = result.divergences;
    cert["verify"] = verify;
  }
  result.certificate = cert.dump(2) + "\n";
  return result;
}

// --- fejer -------------------------------------------------------------------

RunResult run_fejer(const ProblemSpec& spec, Nat depth, const RunOptions& options, OutputFormat format) {
  FejerSetup setup = build_fejer_problem(spec, depth);
  ExactIteration iteration(setup.fixture);
  const Modulus psi = cauchy_rate(setup.rho, setup.rate);

  Table table{{"table", "index", "x", "x_decimal", "residual", "residual_decimal", "rho", "psi"}, {}};
  if (options.timing) table.columns.push_back("wall_ms");
  auto iterate_row = [&](Nat n) {
    const Rational x = iteration.x(n);
    const Rational r = iteration.residual(n);
    return json{{"index", n},
                {"x", x.to_string()},
                {"x_decimal", decimal(x)},
                {"residual", r.to_string()},
                {"residual_decimal", decimal(r)}};
  };
  for (Nat n = 0; n <= setup.iterates; ++n) {
    json row{{"table", "iterate"}};
    row.update(iterate_row(n));
    table.rows.push_back(std::move(row));
  }
  json rates = json::array();
  for (Nat k = 0; k <= depth; ++k) {
    const auto start = Clock::now();
    const Nat rho = setup.rho(k + 1);
    const Nat n = psi(k);
    json row{{"table", "rate"}};
    row.update(iterate_row(n));
    row["index"] = k;
    row["rho"] = rho;
    row["psi"] = n;
    rates.push_back({{"k", k}, {"rho_k_plus_1", rho}, {"psi", n}});
    if (options.timing) row["wall_ms"] = elapsed_ms(start);
    table.rows.push_back(std::move(row));
  }

  RunResult result{ProblemKind::kFejer, depth, render(table, format, ProblemKind::kFejer, depth), {}, {}};
  json cert;
  cert["kind"] = "fejer";
  json prefix = json::array();
  for (const Rational& a : setup.fixture.prefix) prefix.push_back(a.to_string());
  cert["fixture"] = {{"prefix", prefix},
                     {"top", setup.fixture.top.to_string()},
                     {"gap", setup.fixture.gap.to_string()},
                     {"fixed_points", "[" + setup.fixture.sup().to_string() + ", 1/1]"}};
  cert["regularity"] = setup.rho.description();
  cert["rate"] = setup.rate.description();
  cert["depth"] = depth;
  cert["psi"] = rates;

  if (options.verify) {
    json verify;
    json windows = json::array();
    Nat last = 0;
    for (Nat k = 0; k <= depth; ++k) {
      const Nat start = psi(k);
      Rational lo = iteration.x(start);
      Rational hi = lo;
      for (Nat m = start; m <= start + setup.window; ++m) {
        lo = min(lo, iteration.x(m));
        hi = max(hi, iteration.x(m));
      }
      last = std::max(last, start + setup.window);
      const bool ok = hi - lo < pow2(neg(k));
      windows.push_back({{"k", k}, {"psi", start}, {"spread", (hi - lo).to_string()}, {"pass", ok}});
      if (!ok) {
        result.divergences.push_back("iterates in [psi(" + std::to_string(k) + "), psi(" + std::to_string(k) +
                                     ")+" + std::to_string(setup.window) + "] spread by 2^-k or more");
      }
    }
    verify["window"] = setup.window;
    verify["cauchy_windows"] = windows;
    const Nat rate_checked = setup.rho(depth + 1);
    Nat rate_failures = 0;
    for (Nat k = 0; k <= rate_checked; ++k) {
      if (!(iteration.residual(setup.rate(k)) < pow2(neg(k)))) {
        ++rate_failures;
        result.divergences.push_back("residual at r(" + std::to_string(k) + ") is not below 2^-k");
      }
    }
    verify["rate_checked_up_to"] = rate_checked;
    verify["rate_failures"] = rate_failures;
    json fejer = json::array();
    for (const Rational& p : {setup.fixture.sup(), Rational(1)}) {
      const auto violations = fejer_violations(iteration, p, last);
      fejer.push_back({{"fixed_point", p.to_string()}, {"checked_up_to", last}, {"violations", violations}});
      if (!violations.empty()) {
        result.divergences.push_back("Fejer monotonicity toward " + p.to_string() + " fails at n=" +
                                     std::to_string(violations.front()));
      }
    }
    verify["fejer_monotonicity"] = fejer;
    verify["divergences"] = result.divergences;
    cert["verify"] = verify;
  }
  result.certificate = cert.dump(2) + "\n";
  return result;
}

}  // namespace

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ParseError*>(&error)) return kExitParse;
  if (dynamic_cast<const SearchExhausted*>(&error)) return kExitSearchExhausted;
  if (dynamic_cast<const EmptyAdmissibleSet*>(&error)) return kExitEmptyAdmissibleSet;
  if (dynamic_cast<const NoBranchAtDepth*>(&error)) return kExitNoBranchAtDepth;
  return kExitFailure;
}

std::string error_report(const std::exception& error) {
  json report;
  if (const auto* e = dynamic_cast<const SearchExhausted*>(&error)) {
    report = {{"error", "SearchExhausted"}, {"stage", e->stage()}, {"k", e->k()}, {"bound", e->bound()},
              {"capped", e->capped()}};
  } else if (const auto* e = dynamic_cast<const EmptyAdmissibleSet*>(&error)) {
    report = {{"error", "EmptyAdmissibleSet"}, {"stage", "minnorm"}, {"k", e->k()}, {"bound", e->limit()},
              {"precision", e->precision()}};
  } else if (const auto* e = dynamic_cast<const NoBranchAtDepth*>(&error)) {
    report = {{"error", "NoBranchAtDepth"}, {"stage", "leftmost"}, {"bound", e->depth()}};
  } else if (dynamic_cast<const ParseError*>(&error)) {
    report = {{"error", "ParseError"}};
  } else {
    report = {{"error", "Error"}};
  }
  report["message"] = error.what();
  return report.dump();
}

BinaryTree build_tree(const ProblemSpec& spec) {
  if (!spec.has_section("tree")) throw ParseError("missing [tree] section");
  const std::string family = spec.get("tree", "family") ? *spec.get("tree", "family") : "described";
  const Nat length = spec.get_nat("tree", "length").value_or(6);
  if (family == "full") return BinaryTree::full();
  if (family == "all-ones") return BinaryTree::all_ones();
  if (family == "dead-right-branch") return BinaryTree::dead_right_branch(length);
  if (family == "dead-left-branch") return BinaryTree::dead_left_branch(length);
  if (family != "described") throw ParseError("unknown tree family '" + family + "'");
  TreeDescription description;
  description.depth = spec.get_nat("tree", "depth").value_or(0);
  for (char c : spec.require("tree", "bitmap")) {
    if (c == '0' || c == '1') {
      description.bitmap.push_back(c == '1');
    } else if (c != ' ' && c != '\t' && c != '|') {
      throw ParseError("[tree] bitmap: unexpected character '" + std::string(1, c) + "'");
    }
  }
  const std::string tail = spec.get("tree", "tail") ? *spec.get("tree", "tail") : "none";
  const auto rule = parse_tail_rule(tail);
  if (!rule) throw ParseError("[tree] tail: unknown rule '" + tail + "'");
  description.tail = *rule;
  return as_parse_error("[tree]", [&] { return BinaryTree::from_description(std::move(description)); });
}

ZeroSetup build_zero_problem(const ProblemSpec& spec, Nat depth) {
  if (space_kind(spec) == "cantor") {
    if (function_family(spec) != "tree-embedding") throw ParseError("cantor space needs family tree-embedding");
    BinaryTree tree = build_tree(spec);
    EmbeddedProblem embedded = embed_as_metric_problem(tree);
    std::optional<Modulus> raw = spec.get_modulus("regularity");
    const ModulusSense sense = parse_sense(spec, "regularity", ModulusSense::kMetric);
    if (!raw) {
      const auto d = spec.get_nat("regularity", "brute");
      if (!d) throw ParseError("missing [regularity] affine, table or brute");
      raw = brute_tree_modulus(tree, *d).raw();
      if (spec.get("regularity", "sense") && sense != ModulusSense::kTree) {
        throw ParseError("[regularity] brute on a tree is a tree modulus");
      }
      raw = convert_modulus(ModulusSense::kTree, ModulusSense::kMetric, *raw);
    } else {
      raw = convert_modulus(sense, ModulusSense::kMetric, *raw);
    }
    RegularityModulus rho(*raw);
    ZeroSetup setup{ZeroProblem{embedded.space, embedded.f, rho}, std::nullopt, tree, 0};
    setup.truncation_depth = default_truncation(spec, std::max(depth + 1, rho(depth + 2)));
    return setup;
  }
  CompactSpaceRep space = build_coordinate_space(spec);
  FunctionInstance fi = build_function(spec, space);
  RegularityModulus rho = build_regularity(spec, fi);
  return ZeroSetup{ZeroProblem{std::move(space), fi.function, rho}, fi.zeros, std::nullopt, 0};
}

MinNormSetup build_min_norm_problem(const ProblemSpec& spec) {
  CompactSpaceRep space = build_coordinate_space(spec);
  FunctionInstance fi = build_function(spec, space);
  RegularityModulus rho = build_regularity(spec, fi);
  if (!spec.has_section("uniqueness")) throw ParseError("missing [uniqueness] section");
  Nat norm_bound = 0;
  std::optional<ModulusOfUniqueness> phi;
  if (auto d = spec.get_nat("uniqueness", "hilbert-bound")) {
    if (spec.get_modulus("uniqueness")) throw ParseError("[uniqueness] has both hilbert-bound and a modulus");
    norm_bound = *d;
    phi = hilbert_uniqueness_modulus(*d);
  } else if (auto m = spec.get_modulus("uniqueness")) {
    phi = ModulusOfUniqueness(*m);
    norm_bound = 1;
  } else {
    throw ParseError("missing [uniqueness] hilbert-bound, affine or table");
  }
  MinNormOptions options = MinNormOptions::from_environment();
  if (const std::string* strategy = spec.get("search", "strategy")) {
    if (*strategy == "auto") {
      options.strategy = MinNormStrategy::kAuto;
    } else if (*strategy == "enumerate") {
      options.strategy = MinNormStrategy::kEnumerate;
    } else if (*strategy == "cell-search") {
      options.strategy = MinNormStrategy::kCellSearch;
    } else {
      throw ParseError("[search] strategy must be auto, enumerate or cell-search");
    }
  }
  NormedCompactRep rep = euclidean_normed(std::move(space), norm_bound);
  return MinNormSetup{MinNormProblem{std::move(rep), fi.function, rho, *phi}, fi.zeros, options};
}

LeftmostSetup build_leftmost_problem(const ProblemSpec& spec, Nat depth) {
  BinaryTree tree = build_tree(spec);
  std::optional<Modulus> raw = spec.get_modulus("modulus");
  if (raw) {
    raw = convert_modulus(parse_sense(spec, "modulus", ModulusSense::kTree), ModulusSense::kTree, *raw);
  } else if (auto d = spec.get_nat("modulus", "brute")) {
    raw = brute_tree_modulus(tree, *d).raw();
  } else {
    throw ParseError("missing [modulus] affine, table or brute");
  }
  TreeRegularityModulus rho(*raw);
  const Nat truncation = default_truncation(spec, std::max(depth + 1, rho(depth + 1)));
  return LeftmostSetup{std::move(tree), rho, truncation};
}

FejerSetup build_fejer_problem(const ProblemSpec& spec, Nat depth) {
  MonotoneSequenceFixture fix = build_fixture(spec);
  std::optional<RegularityModulus> rho;
  if (auto m = spec.get_modulus("regularity")) {
    rho = RegularityModulus(*m);
  } else {
    FunctionInstance fi = fixture_residual_function(interval_space(), fix);
    const Nat n_max = spec.get_nat("regularity", "brute").value_or(depth + 1);
    rho = brute_regularity_modulus(fi.evaluator, fi.zeros, 1, n_max, brute_depth(spec, n_max));
  }
  const std::string rate_text = spec.get("fixture", "rate") ? *spec.get("fixture", "rate") : "brute";
  std::optional<ApproxSolutionRate> rate;
  if (rate_text == "brute") {
    rate = brute_approx_rate(ExactIteration(fix), (*rho)(depth + 1), Nat{1} << 20);
  } else {
    const auto values = spec.get_nats("fixture", "rate");
    if (values->size() != 2) throw ParseError("[fixture] rate must be 'brute' or 'u v'");
    rate = Modulus::affine((*values)[0], (*values)[1]);
  }
  return FejerSetup{std::move(fix), *rho, *rate, spec.get_nat("fixture", "iterates").value_or(depth),
                    spec.get_nat("fixture", "window").value_or(50)};
}

RunResult run(const ProblemSpec& spec, const RunOptions& options) {
  const Nat depth = options.depth.value_or(spec.depth());
  const OutputFormat format = options.format.value_or(spec.format());
  switch (spec.kind()) {
    case ProblemKind::kZero: return run_zero(spec, depth, options, format);
    case ProblemKind::kMinNorm: return run_min_norm(spec, depth, options, format);
    case ProblemKind::kLeftmost: return run_leftmost(spec, depth, options, format);
    case ProblemKind::kFejer: return run_fejer(spec, depth, options, format);
  }
  throw Error("unknown problem kind");
}

}  // namespace regulus
