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

#include "cmenu/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "cmenu/agent.hpp"

namespace cmenu {
namespace {

Instance Blank(std::vector<std::string> types, std::vector<std::string> actions,
               std::vector<std::string> outcomes) {
  Instance x;
  x.types = std::move(types);
  x.actions = std::move(actions);
  x.outcomes = std::move(outcomes);
  const std::size_t l = x.types.size(), n = x.actions.size(), m = x.outcomes.size();
  x.mu.assign(l, Rational(0));
  x.dist.assign(l, std::vector<std::vector<Rational>>(n, std::vector<Rational>(m, Rational(0))));
  x.cost.assign(l, std::vector<Rational>(n, Rational(0)));
  x.reward.assign(m, Rational(0));
  return x;
}

std::vector<std::string> Names(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

Instance NoMaximumFixture() {
  Instance x = Blank(Names("theta", 3), Names("a", 3), Names("w", 4));
  for (auto& mu : x.mu) mu = Rational(1, 3);
  x.reward = {Rational(1), Rational(3, 4), Rational(0), Rational(0)};
  const int to[3][3] = {{0, 2, 2}, {0, 1, 3}, {1, 2, 2}};
  for (int t = 0; t < 3; ++t) {
    for (int a = 0; a < 3; ++a) x.dist[t][a][to[t][a]] = 1;
  }
  x.cost[2][0] = Rational(1, 4);
  return x;
}

Instance RandomInstance(const RandomParams& p) {
  constexpr int kDen = 24;
  if (p.types == 0 || p.actions == 0 || p.outcomes == 0) throw InvalidInput("sizes must be positive");
  if (p.outcomes > static_cast<std::size_t>(kDen)) throw InvalidInput("at most 24 outcomes");
  if (p.sparsity < 0 || p.sparsity >= 1) throw InvalidInput("sparsity must lie in [0, 1)");
  std::mt19937_64 rng(p.seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::bernoulli_distribution zero(p.sparsity);

  Instance x = Blank(Names("t", p.types), Names("a", p.actions), Names("w", p.outcomes));
  const std::size_t m = p.outcomes;
  int mu_total = 0;
  std::vector<int> mu_w(p.types);
  for (auto& w : mu_w) mu_total += (w = uniform(1, 4));
  for (std::size_t t = 0; t < p.types; ++t) x.mu[t] = Fraction(mu_w[t], mu_total);
  for (std::size_t o = 0; o < m; ++o) x.reward[o] = Fraction(uniform(0, kDen), kDen);

  for (std::size_t t = 0; t < p.types; ++t) {
    for (std::size_t a = 0; a < p.actions; ++a) {
      std::vector<std::size_t> support;
      for (std::size_t o = 0; o < m; ++o) {
        if (!zero(rng)) support.push_back(o);
      }
      if (support.empty()) support.push_back(static_cast<std::size_t>(uniform(0, static_cast<int>(m) - 1)));
      // One unit per supported outcome, the rest spread at random.
      std::vector<int> units(m, 0);
      for (std::size_t o : support) units[o] = 1;
      for (int left = kDen - static_cast<int>(support.size()); left > 0; --left) {
        ++units[support[uniform(0, static_cast<int>(support.size()) - 1)]];
      }
      for (std::size_t o = 0; o < m; ++o) x.dist[t][a][o] = Fraction(units[o], kDen);
      x.cost[t][a] = a == 0 ? Rational(0) : Fraction(uniform(0, kDen / 2), kDen);
    }
  }
  return x;
}

Graph GraphFromJson(const Json& j) {
  Graph g;
  try {
    g.vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    g.max_degree = j.at("k").get<int>();
    if (j.contains("independent_set")) g.independent_set = j.at("independent_set").get<std::vector<int>>();
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed graph: ") + e.what());
  }
  return g;
}

HardnessInstance GenerateHardness(const HardnessParams& params) {
  const Graph& g = params.graph;
  const int s = g.vertices;
  if (s < 1) throw InvalidInput("graph needs at least one vertex");
  if (params.alpha <= 0 || params.alpha > 1) throw InvalidInput("alpha must lie in (0, 1]");
  if (g.max_degree < 1) throw InvalidInput("degree bound k must be positive");
  std::vector<std::set<int>> adj(s + 1);
  for (auto [u, v] : g.edges) {
    if (u < 1 || u > s || v < 1 || v > s || u == v) throw InvalidInput("bad edge");
    adj[u].insert(v);
    adj[v].insert(u);
  }
  for (int v = 1; v <= s; ++v) {
    if (static_cast<int>(adj[v].size()) > g.max_degree) {
      throw InvalidInput("vertex " + std::to_string(v) + " exceeds degree bound " +
                         std::to_string(g.max_degree));
    }
  }
  for (std::size_t i = 0; i < g.independent_set.size(); ++i) {
    const int u = g.independent_set[i];
    if (u < 1 || u > s) throw InvalidInput("independent set vertex out of range");
    for (std::size_t j = i + 1; j < g.independent_set.size(); ++j) {
      if (adj[u].count(g.independent_set[j]) || u == g.independent_set[j]) {
        throw InvalidInput("supplied set is not independent");
      }
    }
  }

  HardnessInstance h;
  {
    Rational q = Rational(g.max_degree) / params.alpha;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    h.l = static_cast<int>(c.get_si());
  }
  const int l = h.l, levels = std::max(0, l - 3);
  h.rho = Rational(1, static_cast<long>(s) * s * s);
  const Rational two_l = Pow(Rational(1, 2), l);  // 2^-l

  // Actions: a_v for every vertex, a_{u,i} for every vertex and i in [l-3],
  // then the outside option.
  std::vector<std::string> actions;
  for (int v = 1; v <= s; ++v) actions.push_back("a_" + std::to_string(v));
  for (int u = 1; u <= s; ++u) {
    for (int i = 1; i <= levels; ++i) actions.push_back("a_" + std::to_string(u) + "_" + std::to_string(i));
  }
  actions.push_back("abar");
  const int bar = static_cast<int>(actions.size()) - 1;
  auto own = [](int v) { return v - 1; };
  auto adjacent = [&](int u, int i) { return s + (u - 1) * levels + (i - 1); };

  h.instance = Blank(Names("v", s), actions, Names("w", 4));
  Instance& x = h.instance;
  x.reward[2] = 1;
  for (auto& mu : x.mu) mu = Rational(1, s);

  std::vector<Rational> cs(s + 1), sn(s + 1);
  for (int v = 1; v <= s; ++v) {
    const double angle = std::numbers::pi * v / (2.0 * s);
    cs[v] = FloorToDyadic(std::cos(angle), params.precision_bits);
    sn[v] = FloorToDyadic(std::sin(angle), params.precision_bits);
  }
  auto set_row = [&](int t, int a, const Rational& scale, int u) {
    auto& row = x.dist[t][a];
    row[0] = cs[u] * scale;
    row[1] = sn[u] * scale;
    row[2] = scale;
    row[3] = 1 - row[0] - row[1] - row[2];
  };
  h.owned.resize(s);
  for (int v = 1; v <= s; ++v) {
    const int t = v - 1;
    for (std::size_t a = 0; a < actions.size(); ++a) {  // dummies by default
      x.dist[t][a][3] = 1;
      x.cost[t][a] = 1;
    }
    set_row(t, own(v), Rational(1, 4), v);
    x.cost[t][own(v)] = Rational(1, 4) - h.rho * l * two_l;
    h.owned[t].push_back(own(v));
    for (int u : adj[v]) {
      for (int i = 1; i <= levels; ++i) {
        const Rational scale = Pow(Rational(1, 2), i + 2);
        x.dist[t][adjacent(u, i)][3] = 0;
        set_row(t, adjacent(u, i), scale, u);
        x.cost[t][adjacent(u, i)] = scale - h.rho * (l - i) * two_l;
        h.owned[t].push_back(adjacent(u, i));
      }
    }
    x.cost[t][bar] = 0;
    h.owned[t].push_back(bar);
    std::sort(h.owned[t].begin(), h.owned[t].end());
  }

  h.eta = Fraction(static_cast<long>(g.independent_set.size()), s);
  h.claimed_bound = h.eta * h.rho * l * two_l / 2;
  if (!g.independent_set.empty()) {
    std::vector<int> members = g.independent_set;
    std::sort(members.begin(), members.end());
    const Rational shrink = 1 - h.rho * l * 2 * two_l;
    std::vector<Contract> pay(s + 1);
    for (int v : members) pay[v] = {cs[v] * shrink, sn[v] * shrink, Rational(0), Rational(0)};
    DeterministicMenu menu;
    for (int v = 1; v <= s; ++v) {
      if (std::binary_search(members.begin(), members.end(), v)) {
        menu.entries.push_back(pay[v]);
        continue;
      }
      // Favourite member contract; the lowest label wins ties.
      int pick = members[0];
      Rational best = ComputeBestResponse(x, v - 1, pay[pick]).agent_utility;
      for (int u : members) {
        Rational util = ComputeBestResponse(x, v - 1, pay[u]).agent_utility;
        if (util > best) {
          best = util;
          pick = u;
        }
      }
      menu.entries.push_back(pay[pick]);
    }
    h.witness = std::move(menu);
  }
  return h;
}

Json HardnessMetadata(const HardnessInstance& h) {
  Json j;
  j["l"] = h.l;
  j["rho"] = RationalToJson(h.rho);
  j["eta"] = RationalToJson(h.eta);
  j["claimed_bound"] = RationalToJson(h.claimed_bound);
  j["note"] =
      "claimed_bound holds only for large enough graphs; small instances are regression data";
  if (h.witness) {
    j["witness_value"] = RationalToJson(MenuValue(h.instance, *h.witness));
    j["witness_dsic"] = VerifyDsic(h.instance, *h.witness).dsic;
  }
  return j;
}

}  // namespace cmenu
