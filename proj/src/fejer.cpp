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

#include "regulus/fejer.hpp"

#include <bit>
#include <mutex>
#include <stdexcept>

#include "regulus/errors.hpp"

namespace regulus {

namespace {

Rational neg_pow2(Nat e) { return Rational::pow2(-static_cast<long>(e)); }

}  // namespace

void MonotoneSequenceFixture::validate() const {
  if (gap.sign() < 0) throw std::invalid_argument("fixture gap must be non-negative");
  if (top > Rational(1)) throw std::invalid_argument("fixture top must be at most 1");
  const Rational first_tail = a(prefix.size());
  if (first_tail.sign() < 0) throw std::invalid_argument("fixture tail starts below 0");
  Rational previous(0);
  for (std::size_t l = 0; l < prefix.size(); ++l) {
    if (prefix[l] < previous) throw std::invalid_argument("fixture prefix must be non-negative and nondecreasing");
    previous = prefix[l];
  }
  if (first_tail < previous) throw std::invalid_argument("fixture prefix exceeds the start of the tail");
}

Rational MonotoneSequenceFixture::a(Nat l) const {
  if (l < prefix.size()) return prefix[l];
  return top - gap * neg_pow2(l + 1);
}

Rational MonotoneSequenceFixture::sup() const { return top; }

Rational MonotoneSequenceFixture::f(const Rational& x) const {
  const Nat m = prefix.size();
  Rational sum(0);
  for (Nat l = 0; l < m; ++l) sum += neg_pow2(l + 1) * max(x, prefix[l]);
  if (x >= top) return sum + x * neg_pow2(m);
  // l0 = least l >= m with a_l >= x, i.e. gap * 2^(-l-1) <= top - x.
  Nat l0 = m;
  if (gap.sign() > 0) {
    const long e = ceil_log2(gap / (top - x)) - 1;
    if (e > static_cast<long>(l0)) l0 = static_cast<Nat>(e);
  }
  // Terms m <= l < l0 contribute x, the rest a_l; both sums are geometric.
  sum += x * (neg_pow2(m) - neg_pow2(l0));
  sum += top * neg_pow2(l0);
  sum -= gap * neg_pow2(2 * l0) / Rational(3);
  return sum;
}

Rational MonotoneSequenceFixture::T(const Rational& x) const { return (x + f(x)) / Rational(2); }

Rational MonotoneSequenceFixture::f_partial(const Rational& x, Nat terms) const {
  Rational sum(0);
  for (Nat l = 0; l < terms; ++l) sum += neg_pow2(l + 1) * max(x, a(l));
  return sum;
}

RealName series_name(const MonotoneSequenceFixture& fix, const Rational& x) {
  return RealName::from_approximator([fix, x](Nat k) { return fix.f_partial(x, k); });
}

struct ExactIteration::State {
  explicit State(MonotoneSequenceFixture f) : fix(std::move(f)) { xs.emplace_back(0); }
  MonotoneSequenceFixture fix;
  std::mutex mutex;
  std::vector<Rational> xs;
};

ExactIteration::ExactIteration(MonotoneSequenceFixture fix) {
  fix.validate();
  state_ = std::make_shared<State>(std::move(fix));
}

Rational ExactIteration::x(Nat n) const {
  std::lock_guard lock(state_->mutex);
  auto& xs = state_->xs;
  while (xs.size() <= n) xs.push_back(state_->fix.T(xs.back()));
  return xs[n];
}

Rational ExactIteration::residual(Nat n) const {
  // T(x_n) is the next iterate.
  return abs(x(n) - x(n + 1));
}

const MonotoneSequenceFixture& ExactIteration::fixture() const { return state_->fix; }

Rational krasnoselskii(const MonotoneSequenceFixture& fix, Nat n, Nat k) {
  const Nat terms = k + static_cast<Nat>(std::bit_width(n));
  Rational y(0);
  for (Nat j = 0; j < n; ++j) y = (y + fix.f_partial(y, terms)) / Rational(2);
  return y;
}

IterationRep fixture_iteration(const ExactIteration& iteration) {
  return IterationRep{
      .point = [iteration](Nat n) { return std::vector<RealName>{RealName::exact(iteration.x(n))}; },
      .residual = [iteration](Nat n) { return RealName::exact(iteration.residual(n)); },
  };
}

FunctionInstance fixture_residual_function(const CompactSpaceRep& interval, const MonotoneSequenceFixture& fix) {
  fix.validate();
  auto eval = [fix](const Point& x, Nat) {
    const Rational v = abs(x[0] - fix.T(x[0]));
    return RationalInterval{v, v};
  };
  ZeroSet zeros{Point{fix.sup()}, Point{Rational(1)}};
  return {lipschitz_function(interval, eval, 1, "monotone-fixture"), zeros, eval};
}

Modulus cauchy_rate(const RegularityModulus& rho, const ApproxSolutionRate& r) {
  return Modulus([rho, r](Nat k) { return r(rho(saturating_add(k, 1))); },
                 "r(rho(k+1)) with r = " + r.description());
}

ApproxSolutionRate brute_approx_rate(const ExactIteration& iteration, Nat k_max, Nat n_limit) {
  std::vector<Nat> table;
  for (Nat k = 0; k <= k_max; ++k) {
    // Residuals are not assumed monotone, so every scan starts at 0.
    Nat n = 0;
    while (!(iteration.residual(n) < neg_pow2(k))) {
      if (++n > n_limit) {
        throw SearchExhausted("approximate-solution rate", k, n_limit, false);
      }
    }
    table.push_back(n);
  }
  return Modulus(
      [table, k_max](Nat k) {
        if (k > k_max) throw std::domain_error("brute-force rate queried beyond k=" + std::to_string(k_max));
        return table[k];
      },
      "brute-force rate up to k=" + std::to_string(k_max));
}

namespace {

enum class Verdict { kCertified, kCounterexample, kUndecided };

struct Cell {
  Rational lo;
  Nat level;  // width 2^-level
};

Verdict certify(const IntervalEvaluator& f, const Rational& zlo, const Rational& zhi, Nat lipschitz_exponent,
                Nat n, Nat k, Nat depth) {
  const Rational delta = neg_pow2(n);
  const Rational target = neg_pow2(k);
  const Rational lipschitz = Rational::pow2(static_cast<long>(lipschitz_exponent));
  std::vector<Cell> stack{{Rational(0), 0}};
  bool undecided = false;
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    const Rational width = neg_pow2(cell.level);
    const Rational hi = cell.lo + width;
    if (cell.lo > zlo - delta && hi < zhi + delta) continue;
    const Rational radius = width / Rational(2);
    const Rational center = cell.lo + radius;
    const RationalInterval value = f(Point{center}, k + 2);
    const Rational low_abs =
        value.lo.sign() > 0 ? value.lo : (value.hi.sign() < 0 ? -value.hi : Rational(0));
    const Rational high_abs = max(abs(value.lo), abs(value.hi));
    const bool center_outside = center <= zlo - delta || center >= zhi + delta;
    if (center_outside && high_abs < target) return Verdict::kCounterexample;
    if (low_abs - lipschitz * radius >= target) continue;
    if (cell.level >= depth) {
      undecided = true;
      continue;
    }
    stack.push_back({center, cell.level + 1});
    stack.push_back({cell.lo, cell.level + 1});
  }
  return undecided ? Verdict::kUndecided : Verdict::kCertified;
}

}  // namespace

RegularityModulus brute_regularity_modulus(const IntervalEvaluator& f, const ZeroSet& zeros, Nat lipschitz_exponent,
                                           Nat n_max, Nat depth) {
  std::vector<Nat> table;
  for (Nat n = 0; n <= n_max; ++n) {
    if (zeros.whole_cube) {
      table.push_back(n);
      continue;
    }
    if (zeros.a.size() != 1) throw std::invalid_argument("brute_regularity_modulus works on [0,1] only");
    const Rational zlo = min(zeros.a[0], zeros.b[0]);
    const Rational zhi = max(zeros.a[0], zeros.b[0]);
    std::optional<Nat> found;
    for (Nat k = n; k <= 2 * depth; ++k) {
      if (certify(f, zlo, zhi, lipschitz_exponent, n, k, depth) == Verdict::kCertified) {
        found = k;
        break;
      }
    }
    if (!found) {
      throw GridTooCoarse("no regularity threshold for n=" + std::to_string(n) + " certifiable at depth " +
                          std::to_string(depth));
    }
    table.push_back(*found);
  }
  return RegularityModulus(Modulus(
      [table, n_max](Nat n) {
        if (n > n_max) throw std::domain_error("brute-force modulus queried beyond n=" + std::to_string(n_max));
        return table[n];
      },
      "brute-force modulus up to n=" + std::to_string(n_max)));
}

std::vector<Nat> fejer_violations(const ExactIteration& iteration, const Rational& p, Nat n_max) {
  std::vector<Nat> out;
  for (Nat n = 0; n <= n_max; ++n) {
    if (abs(iteration.x(n + 1) - p) > abs(iteration.x(n) - p)) out.push_back(n);
  }
  return out;
}

SandwichCheck sandwich_check(const ExactIteration& iteration, Nat k, Nat n, Nat l_max) {
  const MonotoneSequenceFixture& fix = iteration.fixture();
  SandwichCheck check;
  check.k = k;
  check.n = n;
  check.l_k = n == 0 ? 0 : k + static_cast<Nat>(std::bit_width(n));
  const Rational xn = iteration.x(n);
  check.upper = true;
  for (Nat l = 0; l <= l_max; ++l) {
    if (!(fix.a(l) < xn + Rational::pow2(1 - static_cast<long>(k)))) {
      check.upper = false;
      break;
    }
  }
  check.lower = fix.a(check.l_k) >= xn - neg_pow2(k);
  return check;
}

}  // namespace regulus
