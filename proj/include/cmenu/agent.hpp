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

#ifndef CMENU_AGENT_HPP_
#define CMENU_AGENT_HPP_

#include <cstddef>
#include <vector>

#include "cmenu/model.hpp"

namespace cmenu {

struct BestResponse {
  int action = 0;
  Rational agent_utility;
  Rational principal_utility;
  std::vector<int> tied_set;  // every utility-maximizing action, ascending
};

// The agent maximizes F.p - c; ties go to the action that is best for the
// principal, remaining ties to the lowest action index.
BestResponse ComputeBestResponse(const Instance& x, std::size_t type, const Contract& p);

// Floating-point variant. Utilities within 1e-9 * (1 + |u1| + |u2|) count as
// tied.
struct BestResponseF {
  int action = 0;
  double agent_utility = 0;
  double principal_utility = 0;
  std::vector<int> tied_set;
};
BestResponseF ComputeBestResponse(const Instance& x, std::size_t type, const std::vector<double>& p);
bool FloatTie(double u, double v);

// Expected agent utility of `type` facing the lottery `support`.
Rational AgentUtilityRandomized(const Instance& x, std::size_t type,
                                const std::vector<WeightedContract>& support);

struct DsicSlack {
  int type;      // true type
  int reported;  // misreport
  Rational slack;
};

struct DsicReport {
  bool dsic = true;
  Rational worst_slack = 0;  // min over pairs; 0 with a single type
  std::vector<DsicSlack> slacks;
};

DsicReport VerifyDsic(const Instance& x, const RandomizedMenu& menu, const Rational& tol = 0);
DsicReport VerifyDsic(const Instance& x, const DeterministicMenu& menu, const Rational& tol = 0);

Rational MenuValue(const Instance& x, const RandomizedMenu& menu);
Rational MenuValue(const Instance& x, const DeterministicMenu& menu);

struct EpsApproxReport {
  bool ok = true;
  Rational worst_slack = 0;
  int worst_type = -1;
  int worst_reported = -1;
};

// Checks that each recommendation is within `eps` of the utility the type
// could get from any menu entry, its own included. Throws InvalidInput when
// recommendations are missing.
EpsApproxReport VerifyEpsApprox(const Instance& x, const DeterministicMenu& menu, const Rational& eps);

// Principal utility when each type takes its own contract and plays the
// recommended action.
Rational ApproxMenuValue(const Instance& x, const DeterministicMenu& menu);

}  // namespace cmenu

#endif  // CMENU_AGENT_HPP_
