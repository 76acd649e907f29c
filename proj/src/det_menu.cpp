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

#include "cmenu/det_menu.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "cmenu/agent.hpp"
#include "cmenu/lp.hpp"

namespace cmenu {

int MaxThreads() { return omp_get_max_threads(); }

DetResult SolveTwoOutcomes(const Instance& x) {
  if (x.num_outcomes() != 2) {
    throw InvalidInput("dimension error: the two-outcome solver needs m = 2, got m = " +
                       std::to_string(x.num_outcomes()));
  }
  const std::size_t lo = x.reward[1] < x.reward[0] ? 1 : 0, hi = 1 - lo;
  const Rational span = x.reward[hi] - x.reward[lo];

  // The agent's utility is linear in the single payment, so best responses
  // only change where two actions tie.
  std::set<Rational> candidates = {Rational(0), span};
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    for (std::size_t a = 0; a < x.num_actions(); ++a) {
      for (std::size_t b = a + 1; b < x.num_actions(); ++b) {
        Rational slope = x.dist[t][a][hi] - x.dist[t][b][hi];
        if (slope == 0) continue;
        Rational cut = (x.cost[t][a] - x.cost[t][b]) / slope;
        if (cut >= 0 && cut <= span) candidates.insert(cut);
      }
    }
  }
  DetResult best;
  bool first = true;
  for (const Rational& pay : candidates) {
    Contract p(2);
    p[lo] = 0;
    p[hi] = pay;
    DeterministicMenu menu{std::vector<Contract>(x.num_types(), p), std::nullopt};
    Rational v = MenuValue(x, menu);
    if (first || v > best.value) {
      best.menu = std::move(menu);
      best.value = std::move(v);
      first = false;
    }
  }
  return best;
}

namespace {

// Cheapest payments that make `profile` DSIC; variables are p[t][o] at t*m+o.
LinearProgram ProfileLp(const Instance& x, const std::vector<int>& profile) {
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();
  LinearProgram lp;
  lp.sense = Sense::kMinimize;
  for (std::size_t j = 0; j < l * m; ++j) lp.AddVariable();
  for (std::size_t t = 0; t < l; ++t) {
    const auto& own = x.dist[t][profile[t]];
    for (std::size_t o = 0; o < m; ++o) {
      if (own[o] != 0) lp.objective.emplace_back(t * m + o, x.mu[t] * own[o]);
    }
  }
  for (std::size_t t = 0; t < l; ++t) {
    const int at = profile[t];
    for (std::size_t s = 0; s < l; ++s) {
      for (std::size_t a = 0; a < n; ++a) {
        if (s == t && static_cast<int>(a) == at) continue;
        SparseRow row;
        for (std::size_t o = 0; o < m; ++o) {
          if (s == t) {
            Rational v = x.dist[t][at][o] - x.dist[t][a][o];
            if (v != 0) row.emplace_back(t * m + o, v);
          } else {
            if (x.dist[t][at][o] != 0) row.emplace_back(t * m + o, x.dist[t][at][o]);
            if (x.dist[t][a][o] != 0) row.emplace_back(s * m + o, -x.dist[t][a][o]);
          }
        }
        lp.AddRow(std::move(row), Relation::kGreaterEqual, x.cost[t][at] - x.cost[t][a]);
      }
    }
  }
  return lp;
}

}  // namespace

DetResult SolveConstantTypes(const Instance& x, Exec exec, double cap) {
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();
  const double count = std::pow(static_cast<double>(n), static_cast<double>(l));
  if (count > cap) {
    throw CapExceeded("constant-types enumeration needs n^l = " + std::to_string(count) +
                          " profiles, cap is " + std::to_string(cap),
                      count);
  }
  const long long total = static_cast<long long>(count);

  // Upper bound per profile: expected reward with zero payments.
  std::vector<std::vector<Rational>> reward_of(l, std::vector<Rational>(n));
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t a = 0; a < n; ++a) reward_of[t][a] = Expect(x, t, a, x.reward);
  }

  bool found = false;
  Rational best_value;
  long long best_index = -1;
  std::vector<Rational> best_primal;

#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::kParallel)
  for (long long idx = 0; idx < total; ++idx) {
    std::vector<int> profile(l);
    long long rest = idx;
    for (std::size_t t = 0; t < l; ++t) {
      profile[t] = static_cast<int>(rest % static_cast<long long>(n));
      rest /= static_cast<long long>(n);
    }
    Rational bound = 0;
    for (std::size_t t = 0; t < l; ++t) bound += x.mu[t] * reward_of[t][profile[t]];
    bool skip = false;
#pragma omp critical(const_types_best)
    skip = found && bound < best_value;
    if (skip) continue;
    LPSolution sol = Solve(ProfileLp(x, profile), Backend::kRational);
    if (sol.status != LPStatus::kOptimal) continue;
    Rational value = bound - sol.value;
#pragma omp critical(const_types_best)
    {
      if (!found || value > best_value || (value == best_value && idx < best_index)) {
        found = true;
        best_value = value;
        best_index = idx;
        best_primal = sol.primal;
      }
    }
  }
  if (!found) throw SolverError("no feasible action profile (Assumption 1 violated?)");

  DetResult result;
  for (std::size_t t = 0; t < l; ++t) {
    result.menu.entries.emplace_back(best_primal.begin() + t * m, best_primal.begin() + (t + 1) * m);
  }
  result.value = MenuValue(x, result.menu);
  return result;
}

DeterministicMenu ConvertToDsic(const Instance& x, const DeterministicMenu& approx,
                                const Rational& eps) {
  EpsApproxReport report = VerifyEpsApprox(x, approx, eps);
  if (!report.ok) {
    throw InvalidInput("precondition violated: menu is not " + ToString(eps) +
                       "-approximate (worst slack " + ToString(report.worst_slack) + ")");
  }
  const std::size_t l = x.num_types(), m = x.num_outcomes();
  Rational s = SqrtUpper(eps);
  if (s > 1) s = 1;
  std::vector<Contract> mixed(l, Contract(m));
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t o = 0; o < m; ++o) {
      mixed[t][o] = (1 - s) * approx.entries[t][o] + s * x.reward[o];
    }
  }
  DeterministicMenu out;
  for (std::size_t t = 0; t < l; ++t) {
    std::size_t pick = 0;
    Rational best;
    for (std::size_t s2 = 0; s2 < l; ++s2) {
      Rational u = ComputeBestResponse(x, t, mixed[s2]).agent_utility;
      if (s2 == 0 || u > best) {
        best = u;
        pick = s2;
      }
    }
    out.entries.push_back(mixed[pick]);
  }
  return out;
}

HeavyTypeSet HeavyTypes(const Instance& x, const DeterministicMenu& menu, const Rational& L) {
  CheckMenuShape(x, menu);
  HeavyTypeSet set;
  set.threshold = L;
  set.mass = 0;
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    const int a = ComputeBestResponse(x, t, menu.entries[t]).action;
    if (Expect(x, t, a, menu.entries[t]) >= L) {
      set.members.push_back(static_cast<int>(t));
      set.mass += x.mu[t];
    }
  }
  return set;
}

PaymentGrid MakePaymentGrid(const DeterministicMenu& menu, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw InvalidInput("delta must lie in (0, 1]");
  if (menu.entries.empty()) throw InvalidInput("empty menu");
  const std::size_t m = menu.entries[0].size();
  PaymentGrid grid;
  grid.eta = delta * delta * delta / (64 * static_cast<long>(m));
  grid.ceiling.assign(m, Rational(0));
  for (const auto& p : menu.entries) {
    for (std::size_t o = 0; o < m; ++o) grid.ceiling[o] = std::max(grid.ceiling[o], p[o]);
  }
  const Rational q = 1 - grid.eta;
  double guess = std::ceil(std::log(grid.eta.get_d()) / std::log1p(-grid.eta.get_d()));
  unsigned long i = guess > 0 ? static_cast<unsigned long>(guess) : 0;
  while (i > 0 && Pow(q, i - 1) <= grid.eta) --i;
  while (Pow(q, i) > grid.eta) ++i;
  grid.i_max = i;
  return grid;
}

Rational RoundDownToGrid(const PaymentGrid& grid, std::size_t o, const Rational& v) {
  const Rational& top = grid.ceiling[o];
  if (v <= 0 || top <= 0) return 0;
  if (v >= top) return top;
  const Rational q = 1 - grid.eta;
  auto value = [&](unsigned long i) -> Rational { return Pow(q, i) * top; };
  if (v < value(grid.i_max)) return 0;
  const Rational ratio = v / top;
  double guess = std::ceil(std::log(ratio.get_d()) / std::log1p(-grid.eta.get_d()));
  unsigned long i = guess > 0 ? std::min(static_cast<unsigned long>(guess), grid.i_max) : 0;
  while (i > 0 && value(i - 1) <= v) --i;
  while (value(i) > v) ++i;
  return value(i);
}

DeterministicMenu DiscretizeMenu(const Instance& x, const DeterministicMenu& menu,
                                 const Rational& delta) {
  CheckMenuShape(x, menu);
  const std::size_t l = x.num_types(), m = x.num_outcomes();
  PaymentGrid grid = MakePaymentGrid(menu, delta);
  HeavyTypeSet heavy = HeavyTypes(x, menu, Rational(4) / delta);
  std::vector<bool> is_heavy(l, false);
  for (int t : heavy.members) is_heavy[t] = true;

  DeterministicMenu out;
  out.entries.assign(l, Contract(m, Rational(0)));
  std::vector<int> recs(l, 0);
  std::vector<std::size_t> light;
  for (std::size_t t = 0; t < l; ++t) {
    if (is_heavy[t]) continue;
    light.push_back(t);
    for (std::size_t o = 0; o < m; ++o) out.entries[t][o] = RoundDownToGrid(grid, o, menu.entries[t][o]);
    recs[t] = ComputeBestResponse(x, t, menu.entries[t]).action;
  }
  for (std::size_t t = 0; t < l; ++t) {
    if (!is_heavy[t]) continue;
    if (!light.empty()) {
      std::size_t pick = light[0];
      Rational best = ComputeBestResponse(x, t, out.entries[pick]).agent_utility;
      for (std::size_t s : light) {
        Rational u = ComputeBestResponse(x, t, out.entries[s]).agent_utility;
        if (u > best) {
          best = u;
          pick = s;
        }
      }
      out.entries[t] = out.entries[pick];
    }
    recs[t] = ComputeBestResponse(x, t, out.entries[t]).action;
  }
  out.recommendations = std::move(recs);
  return out;
}

CompactMenu Compact(const DeterministicMenu& menu) {
  CompactMenu c;
  for (const auto& p : menu.entries) {
    auto it = std::find(c.contracts.begin(), c.contracts.end(), p);
    if (it == c.contracts.end()) {
      c.assignment.push_back(static_cast<int>(c.contracts.size()));
      c.contracts.push_back(p);
    } else {
      c.assignment.push_back(static_cast<int>(it - c.contracts.begin()));
    }
  }
  return c;
}

DeterministicMenu Expand(const CompactMenu& compact) {
  DeterministicMenu menu;
  for (int i : compact.assignment) menu.entries.push_back(compact.contracts.at(i));
  return menu;
}

}  // namespace cmenu
