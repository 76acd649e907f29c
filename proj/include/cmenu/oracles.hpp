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

// Brute-force baselines. Everything here is exact and independent of the
// solvers it is used to check.

#ifndef CMENU_ORACLES_HPP_
#define CMENU_ORACLES_HPP_

#include <cstddef>
#include <vector>

#include "cmenu/model.hpp"
#include "cmenu/parallel.hpp"
#include "cmenu/rand_menu.hpp"

namespace cmenu {

// Payments {0, step, 2 step, ...} up to and including cap on every outcome.
struct GridSpec {
  Rational payment_cap;
  Rational step;
};

// Per-outcome payment values of the grid, ascending.
std::vector<Rational> GridValues(const GridSpec& grid);

struct GridDetOptions {
  Exec exec = Exec::kParallel;
  // Limit on the search effort: grid contracts per type after reduction, and
  // the number of candidate evaluations in the search itself.
  double budget = 2e10;
  // Off forces the branch and bound even when the level table would fit.
  bool level_tables = true;
};

struct GridDetResult {
  DeterministicMenu menu;
  Rational value;
  double work = 0;  // candidate evaluations performed
};

// Best DSIC menu whose payments all lie on the grid. The search is exact: a
// table over utility levels when few distinct utilities occur, otherwise a
// branch and bound over contracts with a sweep for the last two types.
GridDetResult GridDetMenu(const Instance& x, const GridSpec& grid, const GridDetOptions& options = {});

// Optimal randomized menu using only grid contracts as the support ground
// set. A lower bound on the supremum. The grid may hold at most 1000
// contracts.
Rational GridRandMenu(const Instance& x, const GridSpec& grid, std::size_t support_cap);

// Same with explicit per-outcome payment values.
Rational GridRandMenu(const Instance& x, const std::vector<std::vector<Rational>>& values,
                      std::size_t support_cap);

// All vertices of [0, C]^m intersected with the regions where each type's
// action in `tuple` is a best response. Empty iff the region is empty.
std::vector<Contract> EnumerateRegionVertices(const Instance& x, const PaymentBound& bound,
                                              const std::vector<int>& tuple, double cap = 1e6);

}  // namespace cmenu

#endif  // CMENU_ORACLES_HPP_
