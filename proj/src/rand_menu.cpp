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

#include "cmenu/rand_menu.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>

#include "cmenu/agent.hpp"

namespace cmenu {

PaymentBound ComputePaymentBound(const Instance& x, const Rational& eps) {
  if (eps <= 0) throw InvalidInput("epsilon must be positive");
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();
  PaymentBound b;
  b.epsilon = eps;
  bool have_f = false;
  for (const auto& per_type : x.dist) {
    for (const auto& row : per_type) {
      for (const auto& f : row) {
        if (f > 0 && (!have_f || f < b.f_min)) {
          b.f_min = f;
          have_f = true;
        }
      }
    }
  }
  if (!have_f) throw InvalidInput("instance has no positive probability");
  b.y = *std::min_element(x.mu.begin(), x.mu.end());
  if (b.y <= 0) throw InvalidInput("type probabilities must be positive; normalize first");

  // Hadamard bound: a vertex coordinate is a ratio of integer determinants,
  // the numerator bounded by the product of the augmented row norms. Rows are
  // the pairwise best-response hyperplanes (F_a - F_a' | c_a - c_a') scaled to
  // integers; identity rows have norm 1.
  mpz_class max_norm = 1;
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t a2 = a + 1; a2 < n; ++a2) {
        std::vector<Rational> row(m + 1);
        for (std::size_t o = 0; o < m; ++o) row[o] = x.dist[t][a][o] - x.dist[t][a2][o];
        row[m] = x.cost[t][a] - x.cost[t][a2];
        mpz_class den = 1;
        for (const auto& v : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
        mpz_class sq = 0;
        for (const auto& v : row) {
          mpz_class z = v.get_num() * (den / v.get_den());
          sq += z * z;
        }
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
        if (root * root < sq) ++root;
        if (root > max_norm) max_norm = root;
      }
    }
  }
  mpz_class d;
  mpz_pow_ui(d.get_mpz_t(), max_norm.get_mpz_t(), m);
  b.d = Rational(d);
  const Rational nl(static_cast<long>(n * l));
  b.c = (4 * nl * b.d / eps) * (Rational(4) / (b.f_min * b.y) + b.d);
  return b;
}

MasterSolution SolveMaster(const Instance& x, const std::vector<Contract>& pool, Backend backend) {
  const std::size_t l = x.num_types(), P = pool.size();
  if (P == 0) throw InvalidInput("empty contract pool");
  std::vector<std::vector<Rational>> u(l, std::vector<Rational>(P)), r(l, std::vector<Rational>(P));
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t p = 0; p < P; ++p) {
      BestResponse br = ComputeBestResponse(x, t, pool[p]);
      u[t][p] = std::move(br.agent_utility);
      r[t][p] = std::move(br.principal_utility);
    }
  }
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  for (std::size_t j = 0; j < l * P; ++j) lp.AddVariable();
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t p = 0; p < P; ++p) {
      Rational c = x.mu[t] * r[t][p];
      if (c != 0) lp.objective.emplace_back(t * P + p, std::move(c));
    }
  }
  std::vector<std::vector<int>> ic_row(l, std::vector<int>(l, -1));
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t s = 0; s < l; ++s) {
      if (s == t) continue;
      SparseRow row;
      for (std::size_t p = 0; p < P; ++p) {
        if (u[t][p] == 0) continue;
        row.emplace_back(t * P + p, u[t][p]);
        row.emplace_back(s * P + p, -u[t][p]);
      }
      ic_row[t][s] = lp.AddRow(std::move(row), Relation::kGreaterEqual, Rational(0));
    }
  }
  std::vector<int> norm_row(l);
  for (std::size_t t = 0; t < l; ++t) {
    SparseRow row;
    for (std::size_t p = 0; p < P; ++p) row.emplace_back(t * P + p, Rational(1));
    norm_row[t] = lp.AddRow(std::move(row), Relation::kEqual, Rational(1));
  }

  MasterSolution ms;
  ms.lp = Solve(lp, backend);
  if (ms.lp.status != LPStatus::kOptimal) {
    throw SolverError(std::string("master LP is ") + ToString(ms.lp.status));
  }
  ms.dual.y.assign(l, std::vector<Rational>(l, Rational(0)));
  ms.dual.t.assign(l, Rational(0));
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t s = 0; s < l; ++s) {
      if (s != t) ms.dual.y[t][s] = std::min(Rational(0), ms.lp.dual[ic_row[t][s]]);
    }
    ms.dual.t[t] = ms.lp.dual[norm_row[t]];
  }
  ms.menu.entries.resize(l);
  for (std::size_t t = 0; t < l; ++t) {
    Rational total = 0;
    for (std::size_t p = 0; p < P; ++p) {
      const Rational& g = ms.lp.primal[t * P + p];
      if (g > 0) {
        ms.menu.entries[t].push_back({pool[p], g});
        total += g;
      }
    }
    // The float backend leaves rounding noise; renormalize so weights are a
    // distribution.
    if (total != 1) {
      for (auto& wc : ms.menu.entries[t]) wc.weight /= total;
    }
  }
  ms.value = MenuValue(x, ms.menu);
  return ms;
}

Rational DualViolation(const Instance& x, const DualPoint& dual, std::size_t type, const Contract& p) {
  const std::size_t l = x.num_types();
  std::vector<BestResponse> br(l);
  for (std::size_t s = 0; s < l; ++s) br[s] = ComputeBestResponse(x, s, p);
  Rational v = x.mu[type] * br[type].principal_utility - dual.t[type];
  for (std::size_t s = 0; s < l; ++s) {
    if (s == type) continue;
    v -= dual.y[type][s] * br[type].agent_utility;
    v += dual.y[s][type] * br[s].agent_utility;
  }
  return v;
}

namespace {

// Pricing LP for (type, action) over p in [0, C]^m with epigraph variables
// for the other types' utilities. Returns the optimal value and p*.
struct PricingResult {
  bool feasible = false;
  Rational value;
  Contract p;
  std::vector<double> p_float;
};

PricingResult PricingLp(const Instance& x, const PaymentBound& bound, const DualPoint& dual,
                        std::size_t type, std::size_t action, Backend backend) {
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();
  Rational ysum = 0;
  for (std::size_t s = 0; s < l; ++s) {
    if (s != type) ysum += dual.y[type][s];
  }
  const auto& fa = x.dist[type][action];
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  for (std::size_t o = 0; o < m; ++o) {
    lp.AddVariable(false, bound.c);
    Rational coef = -(x.mu[type] + ysum) * fa[o];
    if (coef != 0) lp.objective.emplace_back(o, coef);
  }
  const Rational constant = x.mu[type] * Expect(x, type, action, x.reward) + ysum * x.cost[type][action];
  for (std::size_t s = 0; s < l; ++s) {
    if (s == type || dual.y[s][type] == 0) continue;
    const int z = lp.AddVariable(true);
    lp.objective.emplace_back(z, dual.y[s][type]);
    for (std::size_t a = 0; a < n; ++a) {
      SparseRow row{{z, Rational(1)}};
      for (std::size_t o = 0; o < m; ++o) {
        if (x.dist[s][a][o] != 0) row.emplace_back(o, -x.dist[s][a][o]);
      }
      lp.AddRow(std::move(row), Relation::kGreaterEqual, -x.cost[s][a]);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (a == action) continue;
    SparseRow row;
    for (std::size_t o = 0; o < m; ++o) {
      Rational v = fa[o] - x.dist[type][a][o];
      if (v != 0) row.emplace_back(o, v);
    }
    lp.AddRow(std::move(row), Relation::kGreaterEqual, x.cost[type][action] - x.cost[type][a]);
  }
  PricingResult res;
  LPSolution sol = Solve(lp, backend);
  if (sol.status != LPStatus::kOptimal) return res;
  res.feasible = true;
  res.value = sol.value + constant;
  res.p.assign(sol.primal.begin(), sol.primal.begin() + m);
  for (auto& v : res.p) {
    if (v < 0) v = 0;
  }
  res.p_float = ToDoubles(res.p);
  return res;
}

// Maximizes the same objective over the region where every type's action in
// `tuple` is incentive compatible; the simplex answer is a vertex.
std::optional<Contract> VertexLp(const Instance& x, const PaymentBound& bound, const DualPoint& dual,
                                 std::size_t type, const std::vector<int>& tuple) {
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();
  Rational ysum = 0;
  for (std::size_t s = 0; s < l; ++s) {
    if (s != type) ysum += dual.y[type][s];
  }
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  std::vector<Rational> coef(m, Rational(0));
  for (std::size_t o = 0; o < m; ++o) {
    coef[o] = -(x.mu[type] + ysum) * x.dist[type][tuple[type]][o];
    for (std::size_t s = 0; s < l; ++s) {
      if (s != type) coef[o] += dual.y[s][type] * x.dist[s][tuple[s]][o];
    }
  }
  for (std::size_t o = 0; o < m; ++o) {
    lp.AddVariable(false, bound.c);
    if (coef[o] != 0) lp.objective.emplace_back(o, coef[o]);
  }
  for (std::size_t s = 0; s < l; ++s) {
    for (std::size_t a = 0; a < n; ++a) {
      if (static_cast<int>(a) == tuple[s]) continue;
      SparseRow row;
      for (std::size_t o = 0; o < m; ++o) {
        Rational v = x.dist[s][tuple[s]][o] - x.dist[s][a][o];
        if (v != 0) row.emplace_back(o, v);
      }
      lp.AddRow(std::move(row), Relation::kGreaterEqual, x.cost[s][tuple[s]] - x.cost[s][a]);
    }
  }
  LPSolution sol = Solve(lp, Backend::kRational);
  if (sol.status != LPStatus::kOptimal) return std::nullopt;
  return Contract(sol.primal.begin(), sol.primal.begin() + m);
}

}  // namespace

OracleResult SeparationOracle(const Instance& x, const PaymentBound& bound, const DualPoint& dual,
                              const OracleOptions& options) {
  const std::size_t l = x.num_types(), n = x.num_actions();
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t s = 0; s < l; ++s) {
      if (s != t && dual.y[t][s] > 0) throw InvalidInput("dual prices y must be nonpositive");
    }
  }
  const long long jobs = static_cast<long long>(l * n);
  std::vector<PricingResult> pricing(jobs);
  std::vector<std::optional<Column>> found(jobs);

#pragma omp parallel for schedule(dynamic) if (options.exec == Exec::kParallel)
  for (long long job = 0; job < jobs; ++job) {
    const std::size_t t = job / n, a = job % n;
    pricing[job] = PricingLp(x, bound, dual, t, a, options.backend);
    const PricingResult& pr = pricing[job];
    if (!pr.feasible) continue;
    const Rational& tt = dual.t[t];
    const bool violated = options.backend == Backend::kRational
                              ? pr.value > tt
                              : pr.value.get_d() > tt.get_d() + 1e-9;
    if (!violated) continue;
    std::vector<int> tuple(l);
    for (std::size_t s = 0; s < l; ++s) {
      if (s == t) {
        tuple[s] = static_cast<int>(a);
      } else if (options.backend == Backend::kRational) {
        tuple[s] = ComputeBestResponse(x, s, pr.p).action;
      } else {
        tuple[s] = ComputeBestResponse(x, s, pr.p_float).action;
      }
    }
    std::optional<Contract> vertex = VertexLp(x, bound, dual, t, tuple);
    if (!vertex) continue;  // float misjudged the tuple
    Rational viol = DualViolation(x, dual, t, *vertex);
    if (viol <= 0) continue;
    found[job] = Column{static_cast<int>(t), std::move(*vertex), std::move(tuple), viol + tt};
  }

  OracleResult out;
  out.value.assign(l, Rational(0));
  std::vector<bool> any(l, false);
  for (long long job = 0; job < jobs; ++job) {
    const std::size_t t = job / n;
    if (pricing[job].feasible && (!any[t] || pricing[job].value > out.value[t])) {
      out.value[t] = pricing[job].value;
      any[t] = true;
    }
    if (!found[job]) continue;
    bool duplicate = false;
    for (const auto& c : out.violated) duplicate |= c.contract == found[job]->contract;
    if (!duplicate) out.violated.push_back(std::move(*found[job]));
  }
  return out;
}

RandResult SolveRandomized(const Instance& x, const Rational& eps, const RandOptions& options) {
  RandResult res;
  res.backend = options.backend;
  res.bound = ComputePaymentBound(x, eps);
  res.pool.push_back(Contract(x.num_outcomes(), Rational(0)));
  const bool exact = options.backend == Backend::kRational;
  const OracleOptions exact_oracle{Backend::kRational, options.exec};
  bool have_bound = false;
  auto lagrangian_of = [&](const MasterSolution& ms, const OracleResult& oracle) {
    Rational sum = 0;
    for (std::size_t t = 0; t < x.num_types(); ++t) sum += std::max(ms.dual.t[t], oracle.value[t]);
    return sum;
  };
  // Only exact pricing values give a valid bound: with a box this large the
  // float pricing LPs can be off in the second decimal.
  auto take_bound = [&](const Rational& b) {
    if (!have_bound || b < res.dual_bound) res.dual_bound = b;
    have_bound = true;
  };
  auto add_columns = [&](OracleResult& oracle) {
    std::size_t added = 0;
    for (auto& col : oracle.violated) {
      if (std::find(res.pool.begin(), res.pool.end(), col.contract) != res.pool.end()) continue;
      res.pool.push_back(std::move(col.contract));
      ++added;
    }
    return added;
  };

  MasterSolution master;
  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    master = SolveMaster(x, res.pool, options.backend);
    OracleResult oracle = SeparationOracle(x, res.bound, master.dual, {options.backend, options.exec});
    Rational lagrangian = lagrangian_of(master, oracle);
    if (exact) take_bound(lagrangian);
    std::size_t added = add_columns(oracle);
    if (added == 0 && !exact) {
      // Float pricing sees nothing more; confirm with exact duals and pricing.
      master = SolveMaster(x, res.pool, Backend::kRational);
      OracleResult check = SeparationOracle(x, res.bound, master.dual, exact_oracle);
      lagrangian = lagrangian_of(master, check);
      take_bound(lagrangian);
      added = add_columns(check);
    }
    res.trace.push_back({iter, master.value, lagrangian, added});
    res.iterations = iter;
    if (added == 0) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) {
    // Columns from the last pricing round are in the pool; use them, and
    // price once more exactly so the bound is valid.
    master = SolveMaster(x, res.pool, Backend::kRational);
    if (!have_bound || !exact) {
      OracleResult check = SeparationOracle(x, res.bound, master.dual, exact_oracle);
      take_bound(lagrangian_of(master, check));
    }
  }
  res.menu = std::move(master.menu);
  res.value = std::move(master.value);
  res.gap = res.dual_bound - res.value;
  return res;
}

void WriteTraceCsv(const std::vector<TraceRow>& trace, std::ostream& out) {
  out << "iter,primal,dual,new_columns\n";
  out << std::setprecision(17);
  for (const auto& row : trace) {
    out << row.iter << ',' << row.primal.get_d() << ',' << row.dual.get_d() << ',' << row.new_columns
        << '\n';
  }
}

Rational SupUpperBound(const RandResult& result) {
  return result.dual_bound < 1 ? result.dual_bound : Rational(1);
}

RandomizedMenu SimplifyMenu(const Instance& x, const RandomizedMenu& menu) {
  if (!VerifyDsic(x, menu).dsic) throw InvalidInput("precondition violated: menu is not DSIC");
  RandomizedMenu out = menu;
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    auto& support = out.entries[t];
    support.erase(std::remove_if(support.begin(), support.end(),
                                 [](const WeightedContract& wc) { return wc.weight == 0; }),
                  support.end());
    // Averaging can move a mean onto a tie where the agent switches action,
    // so regroup until nothing merges.
    for (bool merged = true; merged;) {
      std::map<int, std::vector<std::size_t>> groups;
      for (std::size_t i = 0; i < support.size(); ++i) {
        groups[ComputeBestResponse(x, t, support[i].pay).action].push_back(i);
      }
      merged = groups.size() < support.size();
      if (!merged) break;
      std::vector<WeightedContract> next;
      for (const auto& [action, members] : groups) {
        WeightedContract mean{Contract(x.num_outcomes(), Rational(0)), Rational(0)};
        for (std::size_t i : members) mean.weight += support[i].weight;
        for (std::size_t i : members) {
          for (std::size_t o = 0; o < x.num_outcomes(); ++o) {
            mean.pay[o] += support[i].weight * support[i].pay[o];
          }
        }
        for (auto& v : mean.pay) v /= mean.weight;
        next.push_back(std::move(mean));
      }
      support = std::move(next);
    }
  }
  return out;
}

}  // namespace cmenu
