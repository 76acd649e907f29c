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

#include "cmenu/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include "cmenu/agent.hpp"
#include "cmenu/lp.hpp"

namespace cmenu {

std::vector<Rational> GridValues(const GridSpec& grid) {
  if (grid.step <= 0) throw InvalidInput("grid step must be positive");
  if (grid.payment_cap < 0) throw InvalidInput("grid payment cap must be nonnegative");
  std::vector<Rational> out;
  for (Rational v = 0; v < grid.payment_cap; v += grid.step) out.push_back(v);
  out.push_back(grid.payment_cap);
  return out;
}

namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();

std::int64_t ToInt64(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw CapExceeded(std::string("grid oracle: ") + what + " overflows 64 bits", 0);
  return z.get_si();
}

mpz_class Lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// The instance and grid scaled to integers: payment on outcome o is
// level[k] * unit, and D * (utility or reward) is an integer for every grid
// contract.
class GridProblem {
 public:
  GridProblem(const Instance& x, const std::vector<std::vector<Rational>>& values) {
    l_ = x.num_types();
    n_ = x.num_actions();
    m_ = x.num_outcomes();
    if (values.size() != m_) throw InvalidInput("grid needs one value list per outcome");
    mpz_class den = 1;
    for (const auto& vs : values) {
      for (const auto& v : vs) {
        if (v < 0) throw InvalidInput("grid payments must be nonnegative");
        den = Lcm(den, v.get_den());
      }
    }
    mpz_class g = 0;
    for (const auto& vs : values) {
      for (const auto& v : vs) {
        mpz_class num = v.get_num() * (den / v.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
      }
    }
    if (g == 0) g = 1;
    const Rational unit = Fraction(g, den);
    levels_.resize(m_);
    values_.resize(m_);
    for (std::size_t o = 0; o < m_; ++o) {
      std::vector<Rational> sorted = values[o];
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (const auto& v : sorted) {
        Rational k = v / unit;
        levels_[o].push_back(ToInt64(k.get_num(), "grid level"));
        values_[o].push_back(v);
      }
    }

    mpz_class d = 1;
    for (std::size_t t = 0; t < l_; ++t) {
      for (std::size_t a = 0; a < n_; ++a) {
        d = Lcm(d, x.cost[t][a].get_den());
        d = Lcm(d, Rational(Expect(x, t, a, x.reward)).get_den());
        for (std::size_t o = 0; o < m_; ++o) {
          Rational fu = x.dist[t][a][o] * unit;
          d = Lcm(d, fu.get_den());
        }
      }
    }
    pay_.assign(l_, std::vector<std::vector<std::int64_t>>(n_, std::vector<std::int64_t>(m_)));
    gross_.assign(l_, std::vector<std::int64_t>(n_));
    cost_.assign(l_, std::vector<std::int64_t>(n_));
    mpz_class worst = 0;
    for (std::size_t t = 0; t < l_; ++t) {
      for (std::size_t a = 0; a < n_; ++a) {
        mpz_class total = 0;
        for (std::size_t o = 0; o < m_; ++o) {
          Rational v = x.dist[t][a][o] * unit * d;
          pay_[t][a][o] = ToInt64(v.get_num(), "payment coefficient");
          total += v.get_num() * (levels_[o].empty() ? 0 : levels_[o].back());
        }
        Rational gr = Expect(x, t, a, x.reward) * d;
        Rational c = x.cost[t][a] * d;
        gross_[t][a] = ToInt64(gr.get_num(), "reward");
        cost_[t][a] = ToInt64(c.get_num(), "cost");
        mpz_class mag = total + abs(gr.get_num()) + abs(c.get_num());
        if (mag > worst) worst = mag;
      }
    }
    mpz_class wden = 1;
    for (const auto& mu : x.mu) wden = Lcm(wden, mu.get_den());
    for (const auto& mu : x.mu) {
      Rational w = mu * wden;
      weight_.push_back(ToInt64(w.get_num(), "type weight"));
    }
    if (worst * wden * static_cast<long>(l_ + 1) >= mpz_class(1) << 62) {
      throw CapExceeded("grid oracle: scaled objective overflows 64 bits", 0);
    }
    scale_ = Rational(d * wden);
  }

  // Utility and principal reward of `t` at the grid contract with level
  // indices `k`, under the principal-favouring best response.
  void Evaluate(std::size_t t, const std::vector<int>& k, std::int64_t* u, std::int64_t* r) const {
    std::int64_t best_u = 0, best_r = 0;
    for (std::size_t a = 0; a < n_; ++a) {
      std::int64_t pay = 0;
      for (std::size_t o = 0; o < m_; ++o) pay += pay_[t][a][o] * levels_[o][k[o]];
      const std::int64_t ua = pay - cost_[t][a], ra = gross_[t][a] - pay;
      if (a == 0 || ua > best_u || (ua == best_u && ra > best_r)) {
        best_u = ua;
        best_r = ra;
      }
    }
    *u = best_u;
    *r = best_r;
  }

  bool Reaches(std::size_t t, std::size_t o) const {
    for (std::size_t a = 0; a < n_; ++a) {
      if (pay_[t][a][o] != 0) return true;
    }
    return false;
  }

  Contract ToContract(const std::vector<int>& k) const {
    Contract p(m_);
    for (std::size_t o = 0; o < m_; ++o) p[o] = values_[o][k[o]];
    return p;
  }

  std::size_t l() const { return l_; }
  std::size_t m() const { return m_; }
  std::size_t points(std::size_t o) const { return levels_[o].size(); }
  std::int64_t weight(std::size_t t) const { return weight_[t]; }
  const Rational& scale() const { return scale_; }

 private:
  std::size_t l_, n_, m_;
  std::vector<std::vector<std::int64_t>> levels_;
  std::vector<std::vector<Rational>> values_;
  std::vector<std::vector<std::vector<std::int64_t>>> pay_;
  std::vector<std::vector<std::int64_t>> gross_, cost_;
  std::vector<std::int64_t> weight_;
  Rational scale_;
};

// Candidate contracts for one type, sorted by that type's reward, best first.
// Payments on outcomes the type can never produce are fixed at zero: raising
// them changes nothing for the type and only tempts the others.
struct Candidates {
  std::vector<std::vector<int>> grid_index;     // [i] -> level index per outcome
  std::vector<std::int64_t> reward;             // own reward, scaled
  std::vector<std::vector<std::int64_t>> util;  // [type][i], scaled
};

Candidates MakeCandidates(const GridProblem& g, std::size_t t, double budget,
                          std::int64_t* single_best, std::vector<int>* single_arg) {
  const std::size_t m = g.m(), l = g.l();
  std::vector<std::size_t> radix(m, 1);
  double count = 1;
  for (std::size_t o = 0; o < m; ++o) {
    if (g.Reaches(t, o)) radix[o] = g.points(o);
    count *= static_cast<double>(radix[o]);
  }
  if (count > std::min(budget, 1e7)) {
    throw CapExceeded("grid oracle: " + std::to_string(static_cast<long long>(count)) +
                          " grid contracts for one type exceed the budget",
                      count);
  }
  const std::size_t total = static_cast<std::size_t>(count);
  Candidates raw;
  raw.grid_index.resize(total);
  raw.reward.resize(total);
  raw.util.assign(l, std::vector<std::int64_t>(total));
  std::vector<int> k(m, 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (std::size_t o = 0; o < m; ++o) {
      k[o] = static_cast<int>(rest % radix[o]);
      rest /= radix[o];
    }
    raw.grid_index[i] = k;
    std::int64_t single = 0;
    for (std::size_t s = 0; s < l; ++s) {
      std::int64_t u, r;
      g.Evaluate(s, k, &u, &r);
      raw.util[s][i] = u;
      if (s == t) raw.reward[i] = r;
      single += g.weight(s) * r;
    }
    if (single > *single_best) {
      *single_best = single;
      *single_arg = k;
    }
  }
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw.reward[a] > raw.reward[b]; });
  Candidates out;
  out.grid_index.reserve(total);
  out.reward.reserve(total);
  out.util.assign(l, {});
  for (auto& u : out.util) u.reserve(total);
  for (std::size_t i : order) {
    out.grid_index.push_back(std::move(raw.grid_index[i]));
    out.reward.push_back(raw.reward[i]);
    for (std::size_t s = 0; s < l; ++s) out.util[s].push_back(raw.util[s][i]);
  }
  return out;
}

struct Incumbent {
  std::atomic<std::int64_t> value;
  std::vector<int> pick;  // candidate index per type; empty = single contract
};

// Suffix maximum over compressed coordinates.
class SuffixMax {
 public:
  explicit SuffixMax(std::size_t n) : tree_(n + 1, {kNone, -1}) {}
  void Update(std::size_t pos, std::int64_t v, int who) {
    for (std::size_t i = tree_.size() - 1 - pos; i < tree_.size(); i += i & (~i + 1)) {
      if (v > tree_[i].first) tree_[i] = {v, who};
    }
  }
  std::pair<std::int64_t, int> Query(std::size_t pos) const {
    std::pair<std::int64_t, int> best{kNone, -1};
    for (std::size_t i = tree_.size() - 1 - pos; i > 0; i -= i & (~i + 1)) {
      if (tree_[i].first > best.first) best = tree_[i];
    }
    return best;
  }

 private:
  std::vector<std::pair<std::int64_t, int>> tree_;
};

class Search {
 public:
  Search(const GridProblem& g, const std::vector<Candidates>& cands, Incumbent* inc, double budget)
      : g_(g), c_(cands), inc_(inc), budget_(budget) {
    const std::size_t l = g.l();
    order_.resize(l);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return c_[a].reward.size() < c_[b].reward.size();
    });
  }

  void Run(Exec exec) {
    const std::size_t l = g_.l();
    std::vector<std::vector<int>> lists(l);
    for (std::size_t t = 0; t < l; ++t) {
      lists[t].resize(c_[t].reward.size());
      std::iota(lists[t].begin(), lists[t].end(), 0);
    }
    std::vector<int> pick(l, -1);
    if (l == 1) {
      Offer(g_.weight(0) * c_[0].reward[0], {0});
      return;
    }
    if (l == 2) {
      Pair(order_[0], order_[1], lists, 0, pick);
      return;
    }
    // First level in parallel, the rest sequential per thread.
    const std::size_t t = order_[0];
    const long long count = static_cast<long long>(lists[t].size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::kParallel)
    for (long long i = 0; i < count; ++i) {
      if (error) continue;
      try {
        std::vector<int> local(l, -1);
        Branch(1, t, static_cast<int>(i), lists, 0, local);
      } catch (...) {
#pragma omp critical(grid_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }

  double work() const { return work_.load(); }

 private:
  bool Compatible(std::size_t t, int i, std::size_t s, int j) const {
    return c_[t].util[t][i] >= c_[s].util[t][j] && c_[s].util[s][j] >= c_[t].util[s][i];
  }

  void Charge(double units) {
    double now = work_.fetch_add(units) + units;
    if (now > budget_) {
      throw CapExceeded("grid oracle search exceeded its budget of " + std::to_string(budget_) +
                            " candidate evaluations",
                        now);
    }
  }

  // Chooses candidate i for type t at depth `depth` - 1, then recurses.
  void Branch(std::size_t depth, std::size_t t, int i, const std::vector<std::vector<int>>& lists,
              std::int64_t partial, std::vector<int>& pick) {
    const std::size_t l = g_.l();
    partial += g_.weight(t) * c_[t].reward[i];
    std::int64_t rest = 0;
    for (std::size_t d = depth; d < l; ++d) {
      const std::size_t s = order_[d];
      if (lists[s].empty()) return;
      rest += g_.weight(s) * c_[s].reward[lists[s][0]];
    }
    if (partial + rest <= inc_->value.load()) return;
    std::vector<std::vector<int>> next(l);
    std::int64_t bound = partial;
    double cost = 0;
    for (std::size_t d = depth; d < l; ++d) {
      const std::size_t s = order_[d];
      for (int j : lists[s]) {
        if (Compatible(t, i, s, j)) next[s].push_back(j);
      }
      cost += static_cast<double>(lists[s].size());
      if (next[s].empty()) {
        Charge(cost);
        return;
      }
      bound += g_.weight(s) * c_[s].reward[next[s][0]];
    }
    Charge(cost);
    if (bound <= inc_->value.load()) return;
    pick[t] = i;
    if (l - depth == 1) {
      const std::size_t s = order_[depth];
      pick[s] = next[s][0];
      Offer(bound, pick);
    } else if (l - depth == 2) {
      Pair(order_[depth], order_[depth + 1], next, partial, pick);
    } else {
      const std::size_t s = order_[depth];
      for (int j : next[s]) {
        std::int64_t head = partial + g_.weight(s) * c_[s].reward[j];
        std::int64_t tail = 0;
        for (std::size_t d = depth + 1; d < l; ++d) {
          tail += g_.weight(order_[d]) * c_[order_[d]].reward[next[order_[d]][0]];
        }
        if (head + tail <= inc_->value.load()) break;
        Branch(depth + 1, s, j, next, partial, pick);
      }
    }
    pick[t] = -1;
  }

  // Best compatible pair for the last two types by a sweep over a's utility
  // with a suffix maximum over b's utility.
  void Pair(std::size_t a, std::size_t b, const std::vector<std::vector<int>>& lists,
            std::int64_t partial, std::vector<int>& pick) {
    const auto& la = lists[a];
    const auto& lb = lists[b];
    if (la.empty() || lb.empty()) return;
    const std::int64_t wa = g_.weight(a), wb = g_.weight(b);
    if (partial + wa * c_[a].reward[la[0]] + wb * c_[b].reward[lb[0]] <= inc_->value.load()) return;
    Charge(static_cast<double>(la.size() + lb.size()));
    std::vector<int> sa = la, sb = lb;
    std::stable_sort(sa.begin(), sa.end(),
                     [&](int p, int q) { return c_[a].util[a][p] < c_[a].util[a][q]; });
    std::stable_sort(sb.begin(), sb.end(),
                     [&](int p, int q) { return c_[b].util[a][p] < c_[b].util[a][q]; });
    std::vector<std::int64_t> coords;
    coords.reserve(sb.size());
    for (int j : sb) coords.push_back(c_[b].util[b][j]);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    SuffixMax tree(coords.size());
    std::size_t next = 0;
    std::int64_t best = kNone;
    int best_i = -1, best_j = -1;
    for (int i : sa) {
      const std::int64_t ua = c_[a].util[a][i];
      while (next < sb.size() && c_[b].util[a][sb[next]] <= ua) {
        const int j = sb[next++];
        const std::size_t pos =
            std::lower_bound(coords.begin(), coords.end(), c_[b].util[b][j]) - coords.begin();
        tree.Update(pos, c_[b].reward[j], j);
      }
      const std::size_t from =
          std::lower_bound(coords.begin(), coords.end(), c_[a].util[b][i]) - coords.begin();
      if (from == coords.size()) continue;
      auto [rb, j] = tree.Query(from);
      if (j < 0) continue;
      const std::int64_t total = wa * c_[a].reward[i] + wb * rb;
      if (total > best) {
        best = total;
        best_i = i;
        best_j = j;
      }
    }
    if (best_i < 0) return;
    pick[a] = best_i;
    pick[b] = best_j;
    Offer(partial + best, pick);
    pick[a] = pick[b] = -1;
  }

  void Offer(std::int64_t value, const std::vector<int>& pick) {
#pragma omp critical(grid_incumbent)
    {
      if (value > inc_->value.load()) {
        inc_->value.store(value);
        inc_->pick = pick;
      }
    }
  }

  const GridProblem& g_;
  const std::vector<Candidates>& c_;
  Incumbent* inc_;
  double budget_;
  std::atomic<double> work_{0};
  std::vector<std::size_t> order_;
};

// Level tables: for a vector u of utility levels, type t's best reward among
// its candidates giving it exactly u_t and every other type s at most u_s.
// Menus are DSIC exactly when such a u exists, so the optimum is a max over u.
bool SolveByLevels(const GridProblem& g, const std::vector<Candidates>& c, Incumbent* inc,
                   double* work) {
  const std::size_t l = g.l();
  std::vector<std::vector<std::int64_t>> level(l);
  double cells = 1;
  for (std::size_t t = 0; t < l; ++t) {
    level[t] = c[t].util[t];
    std::sort(level[t].begin(), level[t].end());
    level[t].erase(std::unique(level[t].begin(), level[t].end()), level[t].end());
    cells *= static_cast<double>(level[t].size());
  }
  if (cells * static_cast<double>(l) > 1.2e7) return false;
  const std::size_t total = static_cast<std::size_t>(cells);
  std::vector<std::size_t> stride(l, 1);
  for (std::size_t t = 1; t < l; ++t) stride[t] = stride[t - 1] * level[t - 1].size();

  std::vector<std::vector<std::int64_t>> table(l, std::vector<std::int64_t>(total, kNone));
  for (std::size_t t = 0; t < l; ++t) {
    auto& tab = table[t];
    for (std::size_t i = 0; i < c[t].reward.size(); ++i) {
      std::size_t idx = 0;
      bool ok = true;
      for (std::size_t s = 0; s < l && ok; ++s) {
        const auto& lv = level[s];
        const std::int64_t u = c[t].util[s][i];
        const std::size_t pos = std::lower_bound(lv.begin(), lv.end(), u) - lv.begin();
        ok = pos < lv.size();
        idx += pos * stride[s];
      }
      if (ok && c[t].reward[i] > tab[idx]) tab[idx] = c[t].reward[i];
    }
    // Prefix maximum along every other type's axis: "at most u_s".
    for (std::size_t s = 0; s < l; ++s) {
      if (s == t) continue;
      const std::size_t len = level[s].size();
      for (std::size_t idx = 0; idx < total; ++idx) {
        if ((idx / stride[s]) % len == 0) continue;
        tab[idx] = std::max(tab[idx], tab[idx - stride[s]]);
      }
    }
  }
  std::int64_t best = inc->value.load();
  std::size_t best_idx = total;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::int64_t sum = 0;
    bool ok = true;
    for (std::size_t t = 0; t < l && ok; ++t) {
      ok = table[t][idx] != kNone;
      sum += ok ? g.weight(t) * table[t][idx] : 0;
    }
    if (ok && sum > best) {
      best = sum;
      best_idx = idx;
    }
  }
  *work = cells * static_cast<double>(l) * 2;
  if (best_idx == total) return true;  // the single contract was already optimal
  std::vector<int> pick(l, -1);
  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t i = 0; i < c[t].reward.size() && pick[t] < 0; ++i) {
      bool ok = true;
      for (std::size_t s = 0; s < l && ok; ++s) {
        const std::int64_t cap = level[s][(best_idx / stride[s]) % level[s].size()];
        ok = s == t ? c[t].util[s][i] == cap : c[t].util[s][i] <= cap;
      }
      if (ok) pick[t] = static_cast<int>(i);  // sorted by reward: first is best
    }
  }
  inc->value.store(best);
  inc->pick = pick;
  return true;
}

}  // namespace

GridDetResult GridDetMenu(const Instance& x, const GridSpec& grid, const GridDetOptions& options) {
  const std::vector<Rational> vals = GridValues(grid);
  GridProblem g(x, std::vector<std::vector<Rational>>(x.num_outcomes(), vals));
  const std::size_t l = g.l();
  std::int64_t single = kNone;
  std::vector<int> single_arg;
  std::vector<Candidates> cands;
  for (std::size_t t = 0; t < l; ++t) {
    cands.push_back(MakeCandidates(g, t, options.budget, &single, &single_arg));
  }
  Incumbent inc;
  inc.value.store(single);
  double work = 0;
  for (const auto& c : cands) work += static_cast<double>(c.reward.size()) * static_cast<double>(l);
  double search_work = 0;
  if (!options.level_tables || !SolveByLevels(g, cands, &inc, &search_work)) {
    Search search(g, cands, &inc, options.budget);
    search.Run(options.exec);
    search_work = search.work();
  }
  GridDetResult res;
  res.work = work + search_work;
  for (std::size_t t = 0; t < l; ++t) {
    res.menu.entries.push_back(inc.pick.empty() ? g.ToContract(single_arg)
                                                : g.ToContract(cands[t].grid_index[inc.pick[t]]));
  }
  res.value = MenuValue(x, res.menu);
  if (res.value * g.scale() != Rational(inc.value.load()) || !VerifyDsic(x, res.menu).dsic) {
    throw SolverError("grid oracle produced an inconsistent menu: value " + ToString(res.value) +
                      " scaled " + ToString(res.value * g.scale()) + " expected " +
                      std::to_string(inc.value.load()) + (VerifyDsic(x, res.menu).dsic ? " dsic" : " not dsic") +
                      (inc.pick.empty() ? " single" : " menu"));
  }
  return res;
}

Rational GridRandMenu(const Instance& x, const std::vector<std::vector<Rational>>& values,
                      std::size_t support_cap) {
  if (support_cap < 1 || support_cap > x.num_actions()) {
    throw InvalidInput("support cap must lie in [1, n]");
  }
  const std::size_t m = x.num_outcomes();
  if (values.size() != m) throw InvalidInput("grid needs one value list per outcome");
  double count = 1;
  for (const auto& v : values) count *= static_cast<double>(v.size());
  if (count > 1e3) {
    throw CapExceeded("grid of " + std::to_string(static_cast<long long>(count)) +
                          " contracts exceeds the limit of 1000",
                      count);
  }
  std::vector<Contract> pool;
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    std::size_t rest = i;
    Contract p(m);
    for (std::size_t o = 0; o < m; ++o) {
      p[o] = values[o][rest % values[o].size()];
      rest /= values[o].size();
    }
    pool.push_back(std::move(p));
  }
  return SolveMaster(x, pool, Backend::kRational).value;
}

Rational GridRandMenu(const Instance& x, const GridSpec& grid, std::size_t support_cap) {
  return GridRandMenu(x, std::vector<std::vector<Rational>>(x.num_outcomes(), GridValues(grid)),
                      support_cap);
}

std::vector<Contract> EnumerateRegionVertices(const Instance& x, const PaymentBound& bound,
                                              const std::vector<int>& tuple, double cap) {
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();
  if (tuple.size() != l) throw InvalidInput("action tuple needs one action per type");
  struct Plane {
    std::vector<Rational> a;
    Rational b;  // a . p >= b
  };
  std::vector<Plane> planes;
  for (std::size_t t = 0; t < l; ++t) {
    const int at = tuple[t];
    if (at < 0 || static_cast<std::size_t>(at) >= n) throw InvalidInput("action out of range");
    for (std::size_t a = 0; a < n; ++a) {
      if (static_cast<int>(a) == at) continue;
      Plane h{std::vector<Rational>(m), x.cost[t][at] - x.cost[t][a]};
      for (std::size_t o = 0; o < m; ++o) h.a[o] = x.dist[t][at][o] - x.dist[t][a][o];
      planes.push_back(std::move(h));
    }
  }
  for (std::size_t o = 0; o < m; ++o) {
    Plane lo{std::vector<Rational>(m, Rational(0)), Rational(0)};
    lo.a[o] = 1;
    Plane hi{std::vector<Rational>(m, Rational(0)), -bound.c};
    hi.a[o] = -1;
    planes.push_back(std::move(lo));
    planes.push_back(std::move(hi));
  }
  const std::size_t h = planes.size();
  double subsets = 1;
  for (std::size_t i = 0; i < m; ++i) subsets = subsets * static_cast<double>(h - i) / static_cast<double>(i + 1);
  if (subsets * static_cast<double>(m) > cap) {
    throw CapExceeded("vertex enumeration needs " + std::to_string(subsets) + " subsets", subsets);
  }
  std::vector<Contract> out;
  std::vector<std::size_t> pick(m);
  std::iota(pick.begin(), pick.end(), 0);
  while (m <= h) {
    // Gaussian elimination on the chosen rows.
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    for (std::size_t i : pick) {
      a.push_back(planes[i].a);
      rhs.push_back(planes[i].b);
    }
    bool singular = false;
    for (std::size_t c = 0; c < m && !singular; ++c) {
      std::size_t piv = c;
      while (piv < m && a[piv][c] == 0) ++piv;
      if (piv == m) {
        singular = true;
        break;
      }
      std::swap(a[piv], a[c]);
      std::swap(rhs[piv], rhs[c]);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c || a[r][c] == 0) continue;
        Rational f = a[r][c] / a[c][c];
        for (std::size_t k = c; k < m; ++k) a[r][k] -= f * a[c][k];
        rhs[r] -= f * rhs[c];
      }
    }
    if (!singular) {
      Contract p(m);
      for (std::size_t i = 0; i < m; ++i) p[i] = rhs[i] / a[i][i];
      bool feasible = true;
      for (const auto& pl : planes) {
        Rational lhs = 0;
        for (std::size_t o = 0; o < m; ++o) lhs += pl.a[o] * p[o];
        if (lhs < pl.b) {
          feasible = false;
          break;
        }
      }
      if (feasible && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == h - m + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cmenu
