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

// Menus of randomized contracts by column generation. The master LP chooses
// a lottery per type over a pool of contracts; the pricing step is a
// separation oracle over vertices of the regions where a fixed action tuple
// is incentive compatible, inside the box [0, C]^m.

#ifndef CMENU_RAND_MENU_HPP_
#define CMENU_RAND_MENU_HPP_

#include <cstddef>
#include <ostream>
#include <vector>

#include "cmenu/lp.hpp"
#include "cmenu/model.hpp"
#include "cmenu/parallel.hpp"

namespace cmenu {

struct PaymentBound {
  Rational f_min;  // smallest positive outcome probability
  Rational y;      // smallest type probability
  Rational d;      // bound on vertex coordinates of best-response regions
  Rational c;      // box size
  Rational epsilon;
};

// C = (4 n l D / eps) (4 / (F_min Y) + D).
PaymentBound ComputePaymentBound(const Instance& x, const Rational& eps);

// Dual prices of the master LP. y[t][s] (t != s) belongs to the row saying
// type t prefers its own lottery to type s's; t[t] to type t's normalization.
struct DualPoint {
  std::vector<std::vector<Rational>> y;
  std::vector<Rational> t;
};

struct Column {
  int type = 0;            // type whose pricing problem produced it
  Contract contract;
  std::vector<int> actions;  // incentive-compatible action per type
  Rational oracle_value;     // pricing value for `type`
};

struct OracleResult {
  std::vector<Column> violated;
  std::vector<Rational> value;  // per type: max of the pricing LPs
};

struct OracleOptions {
  Backend backend = Backend::kRational;
  Exec exec = Exec::kParallel;
};

// Solves the pricing LP for every (type, action), recovers a vertex for the
// winners and returns the columns whose reduced value exceeds t. Requires
// y <= 0.
OracleResult SeparationOracle(const Instance& x, const PaymentBound& bound, const DualPoint& dual,
                              const OracleOptions& options = {});

// Left-hand side of the dual constraint minus t for (type, p), using actual
// best responses. Positive means violated.
Rational DualViolation(const Instance& x, const DualPoint& dual, std::size_t type, const Contract& p);

struct TraceRow {
  std::size_t iter;
  Rational primal;
  // Lagrangian upper bound: sum over types of max(t, oracle). With the float
  // backend it comes from float pricing, except on the exact confirmation
  // round that ends the run.
  Rational dual;
  std::size_t new_columns;
};

struct RandOptions {
  Backend backend = Backend::kRational;
  Exec exec = Exec::kParallel;
  std::size_t max_iterations = 10000;
};

struct RandResult {
  RandomizedMenu menu;
  Rational value;
  Rational dual_bound;  // best Lagrangian bound from exact pricing
  Rational gap;         // dual_bound - value
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<TraceRow> trace;
  std::vector<Contract> pool;
  PaymentBound bound;
  Backend backend = Backend::kRational;
};

RandResult SolveRandomized(const Instance& x, const Rational& eps, const RandOptions& options = {});

void WriteTraceCsv(const std::vector<TraceRow>& trace, std::ostream& out);

// min(1, dual bound). The bound always comes from exact pricing.
Rational SupUpperBound(const RandResult& result);

// Value of the master LP restricted to a fixed pool of contracts.
struct MasterSolution {
  LPSolution lp;
  RandomizedMenu menu;
  Rational value;
  DualPoint dual;
};
MasterSolution SolveMaster(const Instance& x, const std::vector<Contract>& pool,
                           Backend backend = Backend::kRational);

// Merges, per type, the support contracts that induce the same action into
// their weighted mean. Throws InvalidInput if the menu is not DSIC.
RandomizedMenu SimplifyMenu(const Instance& x, const RandomizedMenu& menu);

}  // namespace cmenu

#endif  // CMENU_RAND_MENU_HPP_
