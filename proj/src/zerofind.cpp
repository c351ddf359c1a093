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

#include "regulus/zerofind.hpp"

#include <cstdlib>
#include <mutex>

namespace regulus {

namespace {

Rational neg_pow2(Nat e) { return Rational::pow2(-static_cast<long>(e)); }

// Parameters of the search that defines beta(k), computed from the moduli only.
struct StepPlan {
  Nat bound = 0;
  Nat level = 0;
  Nat f_precision = 0;
  Rational f_threshold;
  Nat d_precision = 0;
  Rational d_threshold;
};

StepPlan plan(const ZeroProblem& p, Nat k) {
  StepPlan s;
  if (k == 0) {
    const Nat r2 = p.rho(2);
    s.level = r2;
    s.f_precision = saturating_add(r2, 2);
    s.f_threshold = neg_pow2(saturating_add(r2, 1));
    s.bound = p.space.alpha(p.f.omega(s.f_precision));
    return s;
  }
  // Step from x_j to x_{j+1} with j = k - 1.
  const Nat j = k - 1;
  const Nat n_level = std::max(j + 1, p.rho(j + 3));
  s.level = n_level;
  s.f_precision = saturating_add(n_level, 2);
  s.f_threshold = neg_pow2(saturating_add(n_level, 1));
  s.d_precision = j + 4;
  s.d_threshold = neg_pow2(j + 3) + neg_pow2(j + 2);
  s.bound = p.space.alpha(std::max(j + 4, p.f.omega(saturating_add(n_level, 2))));
  return s;
}

}  // namespace

SearchOptions SearchOptions::from_environment() {
  SearchOptions options;
  if (const char* cap = std::getenv("REGULUS_MAX_SEARCH"); cap != nullptr && *cap != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(cap, &end, 10);
    if (end != nullptr && *end == '\0') options.max_search = value;
  }
  return options;
}

struct ZeroApproximationSequence::State {
  State(ZeroProblem p, SearchOptions o) : problem(std::move(p)), options(std::move(o)) {}

  ZeroProblem problem;
  SearchOptions options;
  std::mutex mutex;
  std::vector<ZeroCertificate> certificates;

  void extend_to(Nat k) {
    while (certificates.size() <= k) certificates.push_back(search(certificates.size()));
  }

  ZeroCertificate search(Nat k) {
    const StepPlan s = plan(problem, k);
    const bool capped = options.max_search && *options.max_search < s.bound;
    const Nat limit = capped ? *options.max_search : s.bound;
    if (options.observer) {
      SearchEvent event{k == 0 ? "base" : "step", k, s.bound, s.f_precision, s.f_threshold, std::nullopt, std::nullopt};
      if (k > 0) {
        event.d_precision = s.d_precision;
        event.d_threshold = s.d_threshold;
      }
      options.observer(event);
    }
    const std::optional<Index> previous = k > 0 ? std::optional<Index>(certificates[k - 1].index) : std::nullopt;
    for (Nat n = 0;; ++n) {
      ZeroCertificate c;
      c.k = k;
      c.index = n;
      c.search_bound = s.bound;
      c.level = s.level;
      c.f_precision = s.f_precision;
      c.f_threshold = s.f_threshold;
      bool ok = true;
      if (previous) {
        c.previous_index = previous;
        c.d_precision = s.d_precision;
        c.d_threshold = s.d_threshold;
        c.d_approx = problem.space.dist(n, *previous).approx(s.d_precision);
        ok = c.d_approx < s.d_threshold;
      }
      if (ok) {
        c.f_approx = problem.f.value(n).approx(s.f_precision);
        ok = abs(c.f_approx) < s.f_threshold;
      }
      if (ok) return c;
      if (n == limit) break;
    }
    throw SearchExhausted(k == 0 ? "base" : "step", k, s.bound, capped);
  }
};

ZeroApproximationSequence::ZeroApproximationSequence(ZeroProblem problem, SearchOptions options)
    : state_(std::make_shared<State>(std::move(problem), std::move(options))) {}

Index ZeroApproximationSequence::beta(Nat k) const { return certificate(k).index; }

ZeroCertificate ZeroApproximationSequence::certificate(Nat k) const {
  std::lock_guard lock(state_->mutex);
  state_->extend_to(k);
  return state_->certificates[k];
}

std::vector<ZeroCertificate> ZeroApproximationSequence::certificates(Nat k) const {
  std::lock_guard lock(state_->mutex);
  state_->extend_to(k);
  return {state_->certificates.begin(), state_->certificates.begin() + static_cast<std::ptrdiff_t>(k + 1)};
}

const ZeroProblem& ZeroApproximationSequence::problem() const { return state_->problem; }

ZeroApproximationSequence find_zero(ZeroProblem problem, SearchOptions options) {
  return ZeroApproximationSequence(std::move(problem), std::move(options));
}

ZeroVerifyReport verify_certificate(const ZeroProblem& problem, const std::vector<ZeroCertificate>& certificates,
                                    Nat up_to) {
  ZeroVerifyReport report;
  for (Nat k = 0; k <= up_to && k < certificates.size(); ++k) {
    const ZeroCertificate& c = certificates[k];
    const StepPlan s = plan(problem, k);
    ZeroCheck row;
    row.k = k;
    row.index = c.index;
    row.f_threshold = s.f_threshold;
    row.f_approx = problem.f.value(c.index).approx(s.f_precision);
    row.f_pass = abs(row.f_approx) < s.f_threshold;
    row.f_bound = abs(row.f_approx) + neg_pow2(s.f_precision);
    bool implied = row.f_bound < neg_pow2(s.level);
    bool matches = c.k == k && c.level == s.level && c.f_precision == s.f_precision &&
                   c.f_threshold == s.f_threshold && c.f_approx == row.f_approx && c.search_bound == s.bound &&
                   c.index <= s.bound;
    bool pass = row.f_pass;
    if (k > 0) {
      const Index previous = certificates[k - 1].index;
      row.has_distance = true;
      row.d_threshold = s.d_threshold;
      row.d_approx = problem.space.dist(c.index, previous).approx(s.d_precision);
      row.d_pass = row.d_approx < s.d_threshold;
      row.d_bound = row.d_approx + neg_pow2(s.d_precision);
      implied = implied && row.d_bound < neg_pow2(k);
      matches = matches && c.previous_index == previous && c.d_precision == s.d_precision &&
                c.d_threshold == s.d_threshold && c.d_approx == row.d_approx;
      pass = pass && row.d_pass;
    }
    row.implied_pass = implied;
    row.matches_stored = matches;
    row.pass = pass && implied && matches;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  if (certificates.size() <= up_to) report.all_pass = false;
  return report;
}

}  // namespace regulus
