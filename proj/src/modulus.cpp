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

#include "regulus/modulus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace regulus {

Nat saturating_add(Nat a, Nat b) { return a > kNatMax - b ? kNatMax : a + b; }

Nat saturating_mul(Nat a, Nat b) {
  if (a == 0 || b == 0) return 0;
  return a > kNatMax / b ? kNatMax : a * b;
}

Nat saturating_pow2(Nat e) { return e >= 64 ? kNatMax : (Nat{1} << e); }

Modulus::Modulus(Fn fn, std::string description)
    : fn_(std::move(fn)), description_(std::move(description)) {}

Modulus Modulus::identity() {
  return Modulus([](Nat k) { return k; }, "k");
}

Modulus Modulus::constant(Nat c) {
  return Modulus([c](Nat) { return c; }, std::to_string(c));
}

Modulus Modulus::affine(Nat u, Nat v) {
  std::ostringstream desc;
  desc << u << "*k+" << v;
  return Modulus([u, v](Nat k) { return saturating_add(saturating_mul(u, k), v); }, desc.str());
}

Modulus Modulus::table(std::vector<Nat> values, Nat tail_u, Nat tail_v) {
  std::ostringstream desc;
  desc << "table[";
  for (std::size_t i = 0; i < values.size(); ++i) desc << (i ? " " : "") << values[i];
  desc << "] then " << tail_u << "*k+" << tail_v;
  return Modulus(
      [values = std::move(values), tail_u, tail_v](Nat k) {
        if (k < values.size()) return values[k];
        return saturating_add(saturating_mul(tail_u, k), tail_v);
      },
      desc.str());
}

Nat normalized_value(const Modulus& raw, Nat k) {
  if (k > kMaxPrecision) throw std::domain_error("modulus argument " + std::to_string(k) + " out of range");
  Nat best = k;
  for (Nat j = 0; j <= k; ++j) best = std::max(best, raw(j));
  return best;
}

RegularityModulus::RegularityModulus(Modulus raw) : raw_(std::move(raw)) {}
Nat RegularityModulus::operator()(Nat k) const { return normalized_value(raw_, k); }

TreeRegularityModulus::TreeRegularityModulus(Modulus raw) : raw_(std::move(raw)) {}
Nat TreeRegularityModulus::operator()(Nat k) const { return normalized_value(raw_, k); }

ModulusOfUniqueness::ModulusOfUniqueness(Modulus raw) : raw_(std::move(raw)) {}
Nat ModulusOfUniqueness::operator()(Nat k) const { return std::max(raw_(k), k); }

}  // namespace regulus
