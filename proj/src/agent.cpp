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

#include "cmenu/agent.hpp"

#include <cmath>

namespace cmenu {

BestResponse ComputeBestResponse(const Instance& x, std::size_t type, const Contract& p) {
  const std::size_t n = x.num_actions(), m = x.num_outcomes();
  std::vector<Rational> util(n);
  for (std::size_t a = 0; a < n; ++a) util[a] = Expect(x, type, a, p) - x.cost[type][a];
  BestResponse br;
  br.agent_utility = util[0];
  for (std::size_t a = 1; a < n; ++a) {
    if (util[a] > br.agent_utility) br.agent_utility = util[a];
  }
  std::vector<Rational> margin(m);
  for (std::size_t o = 0; o < m; ++o) margin[o] = x.reward[o] - p[o];
  bool first = true;
  for (std::size_t a = 0; a < n; ++a) {
    if (util[a] != br.agent_utility) continue;
    br.tied_set.push_back(static_cast<int>(a));
    Rational pu = Expect(x, type, a, margin);
    if (first || pu > br.principal_utility) {
      br.principal_utility = pu;
      br.action = static_cast<int>(a);
      first = false;
    }
  }
  return br;
}

bool FloatTie(double u, double v) {
  return std::fabs(u - v) <= 1e-9 * (1.0 + std::fabs(u) + std::fabs(v));
}

BestResponseF ComputeBestResponse(const Instance& x, std::size_t type, const std::vector<double>& p) {
  const std::size_t n = x.num_actions(), m = x.num_outcomes();
  std::vector<double> util(n), pu(n);
  for (std::size_t a = 0; a < n; ++a) {
    double u = -x.cost[type][a].get_d(), v = 0;
    for (std::size_t o = 0; o < m; ++o) {
      double f = x.dist[type][a][o].get_d();
      u += f * p[o];
      v += f * (x.reward[o].get_d() - p[o]);
    }
    util[a] = u;
    pu[a] = v;
  }
  double best = util[0];
  for (std::size_t a = 1; a < n; ++a) best = std::max(best, util[a]);
  BestResponseF br;
  br.agent_utility = best;
  bool first = true;
  for (std::size_t a = 0; a < n; ++a) {
    if (!FloatTie(util[a], best)) continue;
    br.tied_set.push_back(static_cast<int>(a));
    if (first || pu[a] > br.principal_utility) {
      br.principal_utility = pu[a];
      br.action = static_cast<int>(a);
      first = false;
    }
  }
  return br;
}

Rational AgentUtilityRandomized(const Instance& x, std::size_t type,
                                const std::vector<WeightedContract>& support) {
  Rational total = 0;
  for (const auto& wc : support) {
    if (wc.weight == 0) continue;
    total += wc.weight * ComputeBestResponse(x, type, wc.pay).agent_utility;
  }
  return total;
}

DsicReport VerifyDsic(const Instance& x, const RandomizedMenu& menu, const Rational& tol) {
  CheckMenuShape(x, menu);
  const std::size_t l = x.num_types();
  // u[t][s] = utility of true type t reporting s.
  std::vector<std::vector<Rational>> u(l, std::vector<Rational>(l));
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t s = 0; s < l; ++s) u[t][s] = AgentUtilityRandomized(x, t, menu.entries[s]);
  }
  DsicReport report;
  bool first = true;
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t s = 0; s < l; ++s) {
      if (s == t) continue;
      Rational slack = u[t][t] - u[t][s];
      if (first || slack < report.worst_slack) report.worst_slack = slack;
      first = false;
      if (slack < -tol) report.dsic = false;
      report.slacks.push_back({static_cast<int>(t), static_cast<int>(s), std::move(slack)});
    }
  }
  return report;
}

DsicReport VerifyDsic(const Instance& x, const DeterministicMenu& menu, const Rational& tol) {
  CheckMenuShape(x, menu);
  return VerifyDsic(x, ToRandomized(menu), tol);
}

Rational MenuValue(const Instance& x, const RandomizedMenu& menu) {
  CheckMenuShape(x, menu);
  Rational total = 0;
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    Rational per_type = 0;
    for (const auto& wc : menu.entries[t]) {
      if (wc.weight == 0) continue;
      per_type += wc.weight * ComputeBestResponse(x, t, wc.pay).principal_utility;
    }
    total += x.mu[t] * per_type;
  }
  return total;
}

Rational MenuValue(const Instance& x, const DeterministicMenu& menu) {
  CheckMenuShape(x, menu);
  Rational total = 0;
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    total += x.mu[t] * ComputeBestResponse(x, t, menu.entries[t]).principal_utility;
  }
  return total;
}

EpsApproxReport VerifyEpsApprox(const Instance& x, const DeterministicMenu& menu, const Rational& eps) {
  CheckMenuShape(x, menu);
  if (!menu.recommendations) throw InvalidInput("approximate menu needs recommendations");
  const std::size_t l = x.num_types();
  EpsApproxReport report;
  bool first = true;
  for (std::size_t t = 0; t < l; ++t) {
    const int a = (*menu.recommendations)[t];
    Rational own = Expect(x, t, a, menu.entries[t]) - x.cost[t][a];
    for (std::size_t s = 0; s < l; ++s) {
      Rational slack = own - ComputeBestResponse(x, t, menu.entries[s]).agent_utility + eps;
      if (first || slack < report.worst_slack) {
        report.worst_slack = slack;
        report.worst_type = static_cast<int>(t);
        report.worst_reported = static_cast<int>(s);
        first = false;
      }
    }
  }
  report.ok = report.worst_slack >= 0;
  return report;
}

Rational ApproxMenuValue(const Instance& x, const DeterministicMenu& menu) {
  CheckMenuShape(x, menu);
  if (!menu.recommendations) throw InvalidInput("approximate menu needs recommendations");
  Rational total = 0;
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    const int a = (*menu.recommendations)[t];
    Rational margin = 0;
    for (std::size_t o = 0; o < x.num_outcomes(); ++o) {
      margin += x.dist[t][a][o] * (x.reward[o] - menu.entries[t][o]);
    }
    total += x.mu[t] * margin;
  }
  return total;
}

}  // namespace cmenu
