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

#include "regulus/minnorm.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace regulus {

namespace {

Rational neg_pow2(Nat e) { return Rational::pow2(-static_cast<long>(e)); }

struct Plan {
  Nat p = 0;
  Nat rho_p = 0;
  Nat K = 0;
  Nat L = 0;
  Rational threshold;
};

Plan plan(const MinNormProblem& problem, Nat k) {
  Plan s;
  s.p = saturating_add(problem.phi(k + 1), 2);
  s.rho_p = problem.rho(s.p);
  s.K = saturating_add(s.rho_p, 2);
  s.L = problem.rep.base.alpha(std::max(s.p, problem.f.omega(s.K)));
  s.threshold = neg_pow2(saturating_add(s.rho_p, 1));
  return s;
}

// Incumbent minimizer and the near-tie members seen so far.
class Tracker {
 public:
  explicit Tracker(Nat p) : band_(Rational::pow2(1 - static_cast<long>(p))) {}

  // Evaluates a_n as the literal scan does; returns whether n is in S_k.
  bool visit(const MinNormProblem& problem, const Plan& s, Index n) {
    ++evaluated_;
    Contender c;
    c.index = n;
    c.f_approx = problem.f.value(n).approx(s.K);
    if (abs(c.f_approx) > s.threshold) return false;
    c.norm_approx = problem.rep.norm(n).approx(s.p);
    if (!best_ || c.norm_approx < best_->norm_approx ||
        (c.norm_approx == best_->norm_approx && c.index < best_->index)) {
      best_ = c;
    }
    if (c.norm_approx <= best_->norm_approx + band_) near_.push_back(std::move(c));
    if (near_.size() > 4096) trim();
    return true;
  }

  const std::optional<Contender>& best() const { return best_; }
  Nat evaluated() const { return evaluated_; }

  std::vector<Contender> contenders() {
    trim();
    std::sort(near_.begin(), near_.end(), [](const Contender& a, const Contender& b) {
      return a.norm_approx < b.norm_approx || (a.norm_approx == b.norm_approx && a.index < b.index);
    });
    if (near_.size() > 64) near_.resize(64);
    return near_;
  }

 private:
  void trim() {
    if (!best_) return;
    const Rational limit = best_->norm_approx + band_;
    std::erase_if(near_, [&](const Contender& c) { return c.norm_approx > limit; });
  }

  Rational band_;
  std::optional<Contender> best_;
  std::vector<Contender> near_;
  Nat evaluated_ = 0;
};

MinNormCertificate finish(Nat k, const Plan& s, Tracker& tracker, std::optional<Nat> count, std::string strategy) {
  if (!tracker.best()) throw EmptyAdmissibleSet(k, s.L, s.K);
  MinNormCertificate c;
  c.k = k;
  c.p = s.p;
  c.rho_p = s.rho_p;
  c.K = s.K;
  c.L = s.L;
  c.threshold = s.threshold;
  c.index = tracker.best()->index;
  c.f_approx = tracker.best()->f_approx;
  c.norm_approx = tracker.best()->norm_approx;
  c.admissible_count = count;
  c.contenders = tracker.contenders();
  c.strategy = std::move(strategy);
  c.evaluated = tracker.evaluated();
  return c;
}

MinNormCertificate enumerate(const MinNormProblem& problem, Nat k, const Plan& s, const MinNormOptions& options) {
  if (options.max_search && s.L > *options.max_search) {
    throw SearchExhausted("minnorm scan", k, s.L, true);
  }
  Tracker tracker(s.p);
  Nat count = 0;
  for (Nat n = 0;; ++n) {
    if (tracker.visit(problem, s, n)) ++count;
    if (n == s.L) break;
  }
  return finish(k, s, tracker, count, "enumerate");
}

struct Box {
  std::vector<Nat> lo;
  std::vector<Nat> hi;
  Rational bound;  // lower bound on the norm approximation of any point inside
  Index min_index = 0;
  bool point = false;
};

struct BoxOrder {
  bool operator()(const Box& a, const Box& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.min_index > b.min_index;
  }
};

class CellSearch {
 public:
  CellSearch(const MinNormProblem& problem, Nat k, const Plan& s, const MinNormOptions& options)
      : problem_(problem), k_(k), s_(s), options_(options), grid_(*problem.rep.base.grid),
        resolution_(grid_.resolution(s.L)), tracker_(s.p) {}

  MinNormCertificate run() {
    Box root;
    root.lo.assign(grid_.dimension, 0);
    root.hi.assign(grid_.dimension, Nat{1} << resolution_);
    if (auto b = bounded(std::move(root))) queue_.push(std::move(*b));
    while (!queue_.empty()) {
      Box box = queue_.top();
      queue_.pop();
      if (const auto& best = tracker_.best()) {
        if (box.bound > best->norm_approx) break;
        if (box.min_index > best->index && box.bound >= best->norm_approx) continue;
      }
      if (box.point) {
        tracker_.visit(problem_, s_, box.min_index);
        if (options_.max_search && tracker_.evaluated() > *options_.max_search) {
          throw SearchExhausted("minnorm cell search", k_, *options_.max_search, true);
        }
        continue;
      }
      split(box);
    }
    return finish(k_, s_, tracker_, std::nullopt, "cell-search");
  }

 private:
  void split(const Box& box) {
    std::vector<Box> children{Box{{}, {}, {}, 0, false}};
    for (std::size_t i = 0; i < grid_.dimension; ++i) {
      std::vector<Box> next;
      const Nat lo = box.lo[i];
      const Nat hi = box.hi[i];
      const Nat mid = lo + (hi - lo) / 2;
      for (const Box& partial : children) {
        if (lo == hi) {
          Box c = partial;
          c.lo.push_back(lo);
          c.hi.push_back(hi);
          next.push_back(std::move(c));
          continue;
        }
        Box left = partial;
        left.lo.push_back(lo);
        left.hi.push_back(mid);
        Box right = partial;
        right.lo.push_back(mid + 1);
        right.hi.push_back(hi);
        next.push_back(std::move(left));
        next.push_back(std::move(right));
      }
      children = std::move(next);
    }
    for (Box& c : children) {
      if (auto b = bounded(std::move(c))) {
        const auto& best = tracker_.best();
        if (best && (b->bound > best->norm_approx ||
                     (b->min_index > best->index && b->bound >= best->norm_approx))) {
          continue;
        }
        queue_.push(std::move(*b));
      }
    }
  }

  // Fills in the bound and least index, or drops the box when it provably
  // holds no point of S_k.
  std::optional<Box> bounded(Box box) {
    const std::size_t d = grid_.dimension;
    box.min_index = grid_.min_index(box.lo, box.hi, resolution_);
    if (box.min_index > s_.L) return std::nullopt;
    box.point = box.lo == box.hi;
    if (box.point) {
      // Single points are judged by evaluation, not by bounds.
      const Rational norm = problem_.rep.norm(box.min_index).approx(s_.p + 2);
      box.bound = norm_lower_bound(norm, Rational(0));
      return box;
    }
    std::vector<Nat> center(d);
    Rational radius_sq(0);
    const Rational unit = neg_pow2(resolution_ + 1);
    for (std::size_t i = 0; i < d; ++i) {
      center[i] = box.lo[i] + box.hi[i];
      const Rational half = Rational(static_cast<long>(box.hi[i] - box.lo[i])) * unit;
      radius_sq += half * half;
    }
    const Rational radius = sqrt_floor(radius_sq, resolution_ + 4) + neg_pow2(resolution_ + 4);
    const Index c = grid_.index_of(center, resolution_ + 1);

    // d(x, c) <= radius < 2^-omega(j) gives |F(x)| > |F(c)| - 2^-j; a
    // Lipschitz constant gives |F(x)| >= |F(c)| - 2^c radius.
    // 2^-w > radius exactly when w <= w_max.
    const long e = ceil_log2(radius);
    const bool power_of_two = radius == Rational::pow2(e);
    const long w_max = std::min<long>(static_cast<long>(resolution_) + 1, power_of_two ? -e - 1 : -e);
    std::optional<Nat> j;
    for (Nat t = 0; t <= s_.K + 2 && w_max >= 0; ++t) {
      if (problem_.f.omega(t) <= static_cast<Nat>(w_max)) j = t;
    }
    const auto& lipschitz = problem_.f.lipschitz_exponent;
    if (j || lipschitz) {
      const Nat q = s_.K + 2;
      const Rational fc = abs(problem_.f.value(c).approx(q)) - neg_pow2(q);
      const Rational limit = s_.threshold + neg_pow2(s_.K);
      if (j && fc - neg_pow2(*j) >= limit) return std::nullopt;
      if (lipschitz && fc - Rational::pow2(static_cast<long>(*lipschitz)) * radius > limit) return std::nullopt;
    }
    // The center norm is queried below the box scale so that its error does
    // not dominate the radius.
    const Nat q = std::max(s_.p + 2, resolution_ + 4);
    box.bound = norm_lower_bound(problem_.rep.norm(c).approx(q), radius);
    return box;
  }

  // Lower bound on approx_p(|x|) over |x - c| <= radius, given an
  // approximation of |c| at precision p + 2 or finer.
  Rational norm_lower_bound(const Rational& center_norm, const Rational& radius) const {
    if (problem_.rep.rounds_down) {
      // |c| >= center_norm, and approx_p(|x|) >= floor(|x| 2^p) / 2^p.
      const Rational lower = max(Rational(0), center_norm - radius);
      const Rational scale = Rational::pow2(static_cast<long>(s_.p));
      return Rational((lower * scale).floor(), mpz_class(1)) / scale;
    }
    return center_norm - neg_pow2(s_.p + 2) - radius - neg_pow2(s_.p);
  }

  const MinNormProblem& problem_;
  Nat k_;
  const Plan& s_;
  const MinNormOptions& options_;
  const DyadicGrid& grid_;
  Nat resolution_;
  Tracker tracker_;
  std::priority_queue<Box, std::vector<Box>, BoxOrder> queue_;
};

}  // namespace

ModulusOfUniqueness hilbert_uniqueness_modulus(Nat norm_bound) {
  const Nat log_term = static_cast<Nat>(std::max(0L, ceil_log2(Rational(static_cast<long>(norm_bound) + 1))));
  return ModulusOfUniqueness(Modulus(
      [log_term](Nat k) { return saturating_add(saturating_mul(2, k), 4 + log_term); },
      "2*k+" + std::to_string(4 + log_term)));
}

MinNormOptions MinNormOptions::from_environment() {
  MinNormOptions options;
  if (const char* cap = std::getenv("REGULUS_MAX_SEARCH"); cap != nullptr && *cap != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(cap, &end, 10);
    if (end != nullptr && *end == '\0') options.max_search = value;
  }
  return options;
}

MinNormCertificate min_norm_step(const MinNormProblem& problem, Nat k, const MinNormOptions& options) {
  const Plan s = plan(problem, k);
  const bool have_grid = problem.rep.base.grid != nullptr;
  MinNormStrategy strategy = options.strategy;
  if (strategy == MinNormStrategy::kAuto) {
    strategy = (!have_grid || s.L <= options.enumerate_limit) ? MinNormStrategy::kEnumerate
                                                                : MinNormStrategy::kCellSearch;
  }
  if (strategy == MinNormStrategy::kCellSearch) {
    if (!have_grid) throw std::invalid_argument("cell search needs a space with a dyadic grid");
    return CellSearch(problem, k, s, options).run();
  }
  return enumerate(problem, k, s, options);
}

MinNormResult find_min_norm_zero(const MinNormProblem& problem, Nat k_max, const MinNormOptions& options) {
  MinNormResult result;
  for (Nat k = 0; k <= k_max; ++k) result.steps.push_back(min_norm_step(problem, k, options));
  return result;
}

MinNormVerifyReport verify_min_norm(const MinNormProblem& problem, const MinNormResult& result, Nat up_to,
                                    Nat exhaustive_limit) {
  MinNormVerifyReport report;
  for (Nat k = 0; k <= up_to; ++k) {
    if (k >= result.steps.size()) {
      report.all_pass = false;
      break;
    }
    const MinNormCertificate& c = result.steps[k];
    const Plan s = plan(problem, k);
    MinNormCheck row;
    row.k = k;
    row.index = c.index;
    row.parameters_match = c.k == k && c.p == s.p && c.rho_p == s.rho_p && c.K == s.K && c.L == s.L &&
                           c.threshold == s.threshold;
    row.index_in_range = c.index <= s.L;
    const Rational f_index = problem.f.value(c.index).approx(s.K);
    const Rational norm_index = problem.rep.norm(c.index).approx(s.p);
    row.admissible = abs(f_index) <= s.threshold && f_index == c.f_approx && norm_index == c.norm_approx;
    row.contenders_admissible = true;
    row.argmin_over_contenders = true;
    for (const Contender& m : c.contenders) {
      const Rational fm = problem.f.value(m.index).approx(s.K);
      const Rational nm = problem.rep.norm(m.index).approx(s.p);
      if (m.index > s.L || abs(fm) > s.threshold || fm != m.f_approx || nm != m.norm_approx) {
        row.contenders_admissible = false;
      }
      if (nm < norm_index || (nm == norm_index && m.index < c.index)) row.argmin_over_contenders = false;
    }
    if (s.L <= exhaustive_limit) {
      MinNormOptions literal;
      literal.strategy = MinNormStrategy::kEnumerate;
      try {
        row.argmin_exhaustive = enumerate(problem, k, s, literal).index == c.index;
      } catch (const EmptyAdmissibleSet&) {
        row.argmin_exhaustive = false;
      }
    }
    row.pass = row.parameters_match && row.index_in_range && row.admissible && row.contenders_admissible &&
               row.argmin_over_contenders && row.argmin_exhaustive.value_or(true);
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace regulus
