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

#pragma once

#include <stdexcept>
#include <string>

#include "regulus/rational.hpp"

namespace regulus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search ran out of candidates. Under valid inputs the bounds are
/// provably sufficient, so this means a precondition (nonempty zero set, valid
/// moduli) is false, or an explicit search cap was hit.
class SearchExhausted : public Error {
 public:
  SearchExhausted(std::string stage, Nat k, Nat bound, bool capped)
      : Error("search exhausted at " + stage + " (k=" + std::to_string(k) +
              ", bound=" + std::to_string(bound) + (capped ? ", capped by REGULUS_MAX_SEARCH" : "") + ")"),
        stage_(std::move(stage)), k_(k), bound_(bound), capped_(capped) {}

  const std::string& stage() const { return stage_; }
  Nat k() const { return k_; }
  Nat bound() const { return bound_; }
  bool capped() const { return capped_; }

 private:
  std::string stage_;
  Nat k_;
  Nat bound_;
  bool capped_;
};

/// The admissible set of the minimal-norm search is empty.
class EmptyAdmissibleSet : public Error {
 public:
  EmptyAdmissibleSet(Nat k, Nat limit, Nat precision)
      : Error("empty admissible set at k=" + std::to_string(k) + " (L=" + std::to_string(limit) +
              ", K=" + std::to_string(precision) + ")"),
        k_(k), limit_(limit), precision_(precision) {}

  Nat k() const { return k_; }
  Nat limit() const { return limit_; }
  Nat precision() const { return precision_; }

 private:
  Nat k_;
  Nat limit_;
  Nat precision_;
};

/// A tree has no member string of the requested length.
class NoBranchAtDepth : public Error {
 public:
  explicit NoBranchAtDepth(Nat depth)
      : Error("no member string of length " + std::to_string(depth)), depth_(depth) {}
  Nat depth() const { return depth_; }

 private:
  Nat depth_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Brute-force modulus search could not certify anything at this grid depth.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// A function evaluator returned an enclosure wider than the requested precision.
class EvaluatorNotConvergent : public Error {
 public:
  using Error::Error;
};

}  // namespace regulus
