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

// Solvers for menus of deterministic contracts.

#ifndef CMENU_DET_MENU_HPP_
#define CMENU_DET_MENU_HPP_

#include <cstddef>
#include <vector>

#include "cmenu/model.hpp"
#include "cmenu/parallel.hpp"

namespace cmenu {

struct DetResult {
  DeterministicMenu menu;
  Rational value;
};

// Exact optimum for m = 2. Every type gets the same contract, which pays
// nothing on the lower-reward outcome. Throws InvalidInput if m != 2.
DetResult SolveTwoOutcomes(const Instance& x);

// Exact optimum by enumerating the n^l action profiles, one payment-minimizing
// LP each. Throws CapExceeded when n^l > cap.
DetResult SolveConstantTypes(const Instance& x, Exec exec = Exec::kParallel,
                             double cap = 1e6);

// Turns an eps-approximate menu into an exactly DSIC one, losing at most
// 2*sqrt(eps). When sqrt(eps) is irrational it is rounded up to a multiple of
// 2^-48. Throws InvalidInput if `approx` is not eps-approximate.
DeterministicMenu ConvertToDsic(const Instance& x, const DeterministicMenu& approx,
                                const Rational& eps);

struct HeavyTypeSet {
  Rational threshold;
  std::vector<int> members;
  Rational mass;  // sum of mu over members
};

// Types whose expected payment under their own contract is at least L.
HeavyTypeSet HeavyTypes(const Instance& x, const DeterministicMenu& menu, const Rational& L);

// Payment grid {(1 - eta)^i M(w)} u {0} used to round menus.
struct PaymentGrid {
  Rational eta;
  unsigned long i_max = 0;       // smallest i with (1 - eta)^i <= eta
  std::vector<Rational> ceiling;  // M(w) per outcome
};

PaymentGrid MakePaymentGrid(const DeterministicMenu& menu, const Rational& delta);

// Largest grid value <= v on outcome `o`, or 0 below the grid floor.
Rational RoundDownToGrid(const PaymentGrid& grid, std::size_t o, const Rational& v);

// Rounds payments down to the grid for light types and moves heavy types
// (expected payment >= 4/delta) to their favourite rounded contract. The
// result carries recommendations.
DeterministicMenu DiscretizeMenu(const Instance& x, const DeterministicMenu& menu,
                                 const Rational& delta);

// A menu stored as k distinct rows plus a row index per type.
struct CompactMenu {
  std::vector<Contract> contracts;
  std::vector<int> assignment;
};

CompactMenu Compact(const DeterministicMenu& menu);
DeterministicMenu Expand(const CompactMenu& compact);

enum class PtasMode { kAssignmentEnum, kVertexEnum };

struct PtasOptions {
  PtasMode mode = PtasMode::kAssignmentEnum;
  Exec exec = Exec::kParallel;
  double cap = 1e7;
};

struct PtasResult {
  DeterministicMenu menu;
  Rational value;
  double k = 0;             // contract budget from the rounding argument
  std::size_t k_used = 0;   // min(k, l): a menu never needs more rows than types
  double enumeration = 0;   // (f, b) pairs or hyperplane subsets examined
};

// Number of distinct contracts that suffice for an additive delta loss.
double PtasContractBound(const Rational& delta, std::size_t m);

// Additive PTAS for a constant number of outcomes (m <= 3). Throws
// CapExceeded before enumerating when the count exceeds options.cap.
PtasResult PtasConstantOutcomes(const Instance& x, const Rational& delta,
                                const PtasOptions& options = {});

}  // namespace cmenu

#endif  // CMENU_DET_MENU_HPP_
