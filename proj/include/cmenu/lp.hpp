// Copyright 2026 The contract-menus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// A small dense two-phase simplex solver with Bland's pivoting rule. The exact
// backend works over GMP rationals; the float backend runs the same code on
// doubles and falls back to the exact backend when its answer does not check
// out.

#ifndef CMENU_LP_HPP_
#define CMENU_LP_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmenu/rational.hpp"

namespace cmenu {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class LPStatus { kOptimal, kInfeasible, kUnbounded };
enum class Backend { kRational, kFloat };

const char* ToString(LPStatus status);
const char* ToString(Backend backend);

using SparseRow = std::vector<std::pair<int, Rational>>;

struct LinearProgram {
  struct Row {
    SparseRow coeffs;
    Relation rel;
    Rational rhs;
  };

  Sense sense = Sense::kMaximize;
  SparseRow objective;
  std::vector<Row> rows;
  // Lower bound is 0, or -infinity when free; upper bound optional.
  std::vector<bool> free_var;
  std::vector<std::optional<Rational>> upper;

  std::size_t num_vars() const { return free_var.size(); }
  int AddVariable(bool is_free = false, std::optional<Rational> upper_bound = std::nullopt);
  int AddRow(SparseRow coeffs, Relation rel, Rational rhs);
  // Throws InvalidInput on out-of-range indices.
  void Check() const;
};

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  Rational value;
  std::vector<Rational> primal;
  // One per row: the derivative of the optimal value in that row's rhs.
  std::vector<Rational> dual;
  bool is_vertex = false;
  Backend backend = Backend::kRational;
  bool fell_back = false;  // float backend handed the LP to the exact one
  std::size_t pivots = 0;
};

LPSolution Solve(const LinearProgram& lp, Backend backend = Backend::kRational);

// Throws SolverError unless the solution is optimal.
const std::vector<Rational>& Duals(const LPSolution& solution);

// Re-solves with the given rows turned into equalities. Throws SolverError if
// the restriction is infeasible.
LPSolution RestrictAndResolve(const LinearProgram& lp, const std::vector<int>& fixed_rows,
                              Backend backend = Backend::kRational);

// Rank of the constraints (rows and bounds) that are tight at `x`.
std::size_t ActiveRank(const LinearProgram& lp, const std::vector<Rational>& x);

// Rank of a dense rational matrix.
std::size_t MatrixRank(std::vector<std::vector<Rational>> rows);

// Writes the LP in CPLEX LP text format, for cross-checking with external
// solvers.
std::string ToLpFormat(const LinearProgram& lp);

}  // namespace cmenu

#endif  // CMENU_LP_HPP_
