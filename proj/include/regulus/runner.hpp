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

// Batch runs of problem files: builds the problem objects a ProblemSpec
// describes, runs the matching algorithm to the requested depth and renders
// the convergence table and the certificate document.

#pragma once

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "regulus/families.hpp"
#include "regulus/fejer.hpp"
#include "regulus/minnorm.hpp"
#include "regulus/problem.hpp"
#include "regulus/trees.hpp"
#include "regulus/zerofind.hpp"

namespace regulus {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitSearchExhausted = 3,
  kExitEmptyAdmissibleSet = 4,
  kExitNoBranchAtDepth = 5,
  kExitDivergence = 6,
};

int exit_code_for(const std::exception& error);

/// One-line JSON object describing the error, with stage and bound fields for
/// search failures.
std::string error_report(const std::exception& error);

struct ZeroSetup {
  ZeroProblem problem;
  /// Closed-form zero set, when the family has one.
  std::optional<ZeroSet> zeros;
  /// The tree of a tree-embedding problem.
  std::optional<BinaryTree> tree;
  Nat truncation_depth = 0;
};

struct MinNormSetup {
  MinNormProblem problem;
  ZeroSet zeros;
  MinNormOptions options;
};

struct LeftmostSetup {
  BinaryTree tree;
  TreeRegularityModulus rho;
  /// Depth of the exhaustive comparison in verify mode.
  Nat truncation_depth = 0;
};

struct FejerSetup {
  MonotoneSequenceFixture fixture;
  RegularityModulus rho;
  ApproxSolutionRate rate;
  Nat iterates = 0;
  Nat window = 0;
};

// Builders throw ParseError for missing or inconsistent entries.
ZeroSetup build_zero_problem(const ProblemSpec& spec, Nat depth);
MinNormSetup build_min_norm_problem(const ProblemSpec& spec);
LeftmostSetup build_leftmost_problem(const ProblemSpec& spec, Nat depth);
FejerSetup build_fejer_problem(const ProblemSpec& spec, Nat depth);
BinaryTree build_tree(const ProblemSpec& spec);

struct RunOptions {
  /// Override [problem] depth and out.
  std::optional<Nat> depth;
  std::optional<OutputFormat> format;
  bool verify = false;
  /// Adds a wall_ms column. Off by default so that output is reproducible.
  bool timing = false;
};

struct RunResult {
  ProblemKind kind = ProblemKind::kZero;
  Nat depth = 0;
  /// CSV or JSON document.
  std::string table;
  /// JSON document.
  std::string certificate;
  /// Verify-mode findings; empty when everything checked out.
  std::vector<std::string> divergences;

  int exit_code() const { return divergences.empty() ? kExitOk : kExitDivergence; }
};

/// Runs k = 0..depth. Algorithm errors propagate as exceptions.
RunResult run(const ProblemSpec& spec, const RunOptions& options = {});

}  // namespace regulus
