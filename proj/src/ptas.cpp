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

// Additive PTAS for a constant number of outcomes. A menu with at most k
// distinct contracts is a k x m matrix T plus an assignment f of types to
// rows. Once f and the intended actions b are fixed, the best T is the
// solution of an LP; we either solve that LP directly (assignment mode) or
// enumerate the vertices of its feasible region (vertex mode).

#include <algorithm>
#include <cmath>
#include <string>

#include "cmenu/agent.hpp"
#include "cmenu/det_menu.hpp"
#include "cmenu/lp.hpp"

namespace cmenu {
namespace {

// Restricted-growth strings: f[0] = 0 and f[i] <= 1 + max(f[0..i-1]), with at
// most `blocks` distinct values. Each set partition of the types appears once.
std::vector<std::vector<int>> Partitions(std::size_t l, std::size_t blocks) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(l, 0);
  auto rec = [&](auto&& self, std::size_t i, int used) -> void {
    if (i == l) {
      out.push_back(f);
      return;
    }
    for (int v = 0; v <= used && static_cast<std::size_t>(v) < blocks; ++v) {
      f[i] = v;
      self(self, i + 1, std::max(used, v + 1));
    }
  };
  if (l == 0) return {{}};
  rec(rec, 0, 0);
  return out;
}

int NumBlocks(const std::vector<int>& f) {
  return f.empty() ? 0 : 1 + *std::max_element(f.begin(), f.end());
}

struct Hyperplane {
  std::vector<Rational> coeffs;  // over the rows*m matrix entries
  Rational rhs;                  // coeffs . T >= rhs
};

// IC rows of the (f, b) program followed by T >= 0.
std::vector<Hyperplane> Hyperplanes(const Instance& x, const std::vector<int>& f,
                                    const std::vector<int>& b) {
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();
  const std::size_t rows = NumBlocks(f), d = rows * m;
  std::vector<Hyperplane> out;
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < rows; ++i) {
        if (static_cast<int>(i) == f[t] && static_cast<int>(a) == b[t]) continue;
        Hyperplane h{std::vector<Rational>(d, Rational(0)), x.cost[t][b[t]] - x.cost[t][a]};
        for (std::size_t o = 0; o < m; ++o) {
          h.coeffs[f[t] * m + o] += x.dist[t][b[t]][o];
          h.coeffs[i * m + o] -= x.dist[t][a][o];
        }
        out.push_back(std::move(h));
      }
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    Hyperplane h{std::vector<Rational>(d, Rational(0)), Rational(0)};
    h.coeffs[j] = 1;
    out.push_back(std::move(h));
  }
  return out;
}

LinearProgram AssignmentLp(const Instance& x, const std::vector<int>& f, const std::vector<int>& b) {
  const std::size_t m = x.num_outcomes();
  const std::size_t d = NumBlocks(f) * m;
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  for (std::size_t j = 0; j < d; ++j) lp.AddVariable();
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    for (std::size_t o = 0; o < m; ++o) {
      const Rational& fv = x.dist[t][b[t]][o];
      if (fv != 0) lp.objective.emplace_back(f[t] * m + o, -x.mu[t] * fv);
    }
  }
  for (auto& h : Hyperplanes(x, f, b)) {
    // Nonnegativity is already a variable bound.
    int nonzeros = 0;
    for (const auto& c : h.coeffs) nonzeros += c != 0;
    if (nonzeros == 1 && h.rhs == 0) continue;
    SparseRow row;
    for (std::size_t j = 0; j < d; ++j) {
      if (h.coeffs[j] != 0) row.emplace_back(j, h.coeffs[j]);
    }
    lp.AddRow(std::move(row), Relation::kGreaterEqual, h.rhs);
  }
  return lp;
}

// Solves the square system A x = rhs exactly; false if singular.
bool SolveSquare(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs,
                 std::vector<Rational>* out) {
  const std::size_t d = rhs.size();
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && a[piv][c] == 0) ++piv;
    if (piv == d) return false;
    std::swap(a[piv], a[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k < d; ++k) a[r][k] -= factor * a[c][k];
      rhs[r] -= factor * rhs[c];
    }
  }
  out->resize(d);
  for (std::size_t i = 0; i < d; ++i) (*out)[i] = rhs[i] / a[i][i];
  return true;
}

double Binomial(double n, double k) {
  if (k < 0 || k > n) return 0;
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

// Every type picks its utility-maximizing row; ties go to the row that is
// best for the principal, then to the lowest row.
std::pair<DeterministicMenu, Rational> ScoreRows(const Instance& x, const std::vector<Contract>& rows) {
  DeterministicMenu menu;
  Rational value = 0;
  for (std::size_t t = 0; t < x.num_types(); ++t) {
    std::size_t pick = 0;
    BestResponse best = ComputeBestResponse(x, t, rows[0]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      BestResponse br = ComputeBestResponse(x, t, rows[i]);
      if (br.agent_utility > best.agent_utility ||
          (br.agent_utility == best.agent_utility && br.principal_utility > best.principal_utility)) {
        best = std::move(br);
        pick = i;
      }
    }
    menu.entries.push_back(rows[pick]);
    value += x.mu[t] * best.principal_utility;
  }
  return {std::move(menu), std::move(value)};
}

}  // namespace

double PtasContractBound(const Rational& delta, std::size_t m) {
  const double base = 64.0 * static_cast<double>(m) / std::pow(delta.get_d(), 3);
  return std::ceil(std::pow(base * std::log(base), static_cast<double>(m)));
}

PtasResult PtasConstantOutcomes(const Instance& x, const Rational& delta, const PtasOptions& options) {
  if (delta <= 0 || delta > 1) throw InvalidInput("delta must lie in (0, 1]");
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();
  if (m > 3) {
    throw CapExceeded("the PTAS is limited to m <= 3 outcomes, got m = " + std::to_string(m),
                      static_cast<double>(m));
  }
  PtasResult result;
  result.k = PtasContractBound(delta, m);
  result.k_used = static_cast<std::size_t>(std::min<double>(result.k, static_cast<double>(l)));

  const auto partitions = Partitions(l, result.k_used);
  const double actions = std::pow(static_cast<double>(n), static_cast<double>(l));
  double count = static_cast<double>(partitions.size()) * actions;
  if (options.mode == PtasMode::kVertexEnum) {
    // Each (f, b) contributes C(#hyperplanes, rows*m) subsets.
    count = 0;
    for (const auto& f : partitions) {
      const double rows = NumBlocks(f);
      const double h = static_cast<double>(l * n) * rows - static_cast<double>(l) + rows * m;
      count += actions * Binomial(h, rows * m);
    }
  }
  result.enumeration = count;
  if (count > options.cap) {
    throw CapExceeded("PTAS enumeration size " + std::to_string(count) + " exceeds cap " +
                          std::to_string(options.cap),
                      count);
  }

  std::vector<std::vector<Rational>> reward_of(l, std::vector<Rational>(n));
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t a = 0; a < n; ++a) reward_of[t][a] = Expect(x, t, a, x.reward);
  }

  const long long per_f = static_cast<long long>(actions);
  const long long total = static_cast<long long>(partitions.size()) * per_f;
  bool found = false;
  Rational best_value;
  long long best_index = -1;
  DeterministicMenu best_menu;

#pragma omp parallel for schedule(dynamic, 2) if (options.exec == Exec::kParallel)
  for (long long idx = 0; idx < total; ++idx) {
    const auto& f = partitions[idx / per_f];
    std::vector<int> b(l);
    long long rest = idx % per_f;
    for (std::size_t t = 0; t < l; ++t) {
      b[t] = static_cast<int>(rest % static_cast<long long>(n));
      rest /= static_cast<long long>(n);
    }
    Rational bound = 0;
    for (std::size_t t = 0; t < l; ++t) bound += x.mu[t] * reward_of[t][b[t]];
    bool skip = false;
#pragma omp critical(ptas_best)
    skip = found && bound < best_value;
    if (skip) continue;

    const std::size_t rows = NumBlocks(f), d = rows * m;
    bool have = false;
    Rational value;
    DeterministicMenu menu;
    if (options.mode == PtasMode::kAssignmentEnum) {
      LPSolution sol = Solve(AssignmentLp(x, f, b), Backend::kRational);
      if (sol.status != LPStatus::kOptimal) continue;
      std::vector<Contract> table(rows, Contract(m));
      for (std::size_t j = 0; j < d; ++j) table[j / m][j % m] = sol.primal[j];
      for (std::size_t t = 0; t < l; ++t) menu.entries.push_back(table[f[t]]);
      value = MenuValue(x, menu);
      have = true;
    } else {
      const auto planes = Hyperplanes(x, f, b);
      std::vector<std::size_t> pick(d);
      for (std::size_t i = 0; i < d; ++i) pick[i] = i;
      const std::size_t h = planes.size();
      while (d <= h) {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> rhs;
        for (std::size_t i : pick) {
          a.push_back(planes[i].coeffs);
          rhs.push_back(planes[i].rhs);
        }
        std::vector<Rational> point;
        if (SolveSquare(std::move(a), std::move(rhs), &point)) {
          bool feasible = true;
          for (const auto& p : planes) {
            Rational lhs = 0;
            for (std::size_t j = 0; j < d && feasible; ++j) {
              if (p.coeffs[j] != 0) lhs += p.coeffs[j] * point[j];
            }
            if (lhs < p.rhs) {
              feasible = false;
              break;
            }
          }
          if (feasible) {
            std::vector<Contract> table(rows, Contract(m));
            for (std::size_t j = 0; j < d; ++j) table[j / m][j % m] = point[j];
            auto [cand, v] = ScoreRows(x, table);
            if (!have || v > value) {
              have = true;
              value = std::move(v);
              menu = std::move(cand);
            }
          }
        }
        // Next d-subset in lexicographic order.
        std::size_t i = d;
        while (i > 0 && pick[i - 1] == h - d + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    if (!have) continue;
#pragma omp critical(ptas_best)
    {
      if (!found || value > best_value || (value == best_value && idx < best_index)) {
        found = true;
        best_value = value;
        best_index = idx;
        best_menu = menu;
      }
    }
  }
  if (!found) throw SolverError("PTAS found no feasible menu");
  result.menu = std::move(best_menu);
  result.value = std::move(best_value);
  return result;
}

}  // namespace cmenu
