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

#include "cmenu/model.hpp"

#include <set>
#include <sstream>

namespace cmenu {

RandomizedMenu ToRandomized(const DeterministicMenu& menu) {
  RandomizedMenu out;
  out.entries.reserve(menu.entries.size());
  for (const auto& p : menu.entries) {
    out.entries.push_back({WeightedContract{p, Rational(1)}});
  }
  return out;
}

namespace {

bool CheckShape(const Instance& x, std::vector<std::string>* v) {
  const std::size_t l = x.types.size(), n = x.actions.size(), m = x.outcomes.size();
  if (l == 0) v->push_back("no types");
  if (n == 0) v->push_back("no actions");
  if (m == 0) v->push_back("no outcomes");
  auto unique = [v](const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) v->push_back(std::string("duplicate ") + what + " identifier");
  };
  unique(x.types, "type");
  unique(x.actions, "action");
  unique(x.outcomes, "outcome");
  if (x.mu.size() != l) v->push_back("mu has wrong length");
  if (x.reward.size() != m) v->push_back("reward has wrong length");
  if (x.cost.size() != l) v->push_back("cost has wrong length");
  if (x.dist.size() != l) v->push_back("dist has wrong length");
  if (!v->empty()) return false;
  for (std::size_t t = 0; t < l; ++t) {
    if (x.cost[t].size() != n || x.dist[t].size() != n) {
      v->push_back("type " + x.types[t] + " does not cover every action");
      return false;
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (x.dist[t][a].size() != m) {
        v->push_back("distribution " + x.types[t] + "/" + x.actions[a] + " has wrong length");
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int ZeroCostAction(const Instance& x) {
  for (std::size_t a = 0; a < x.num_actions(); ++a) {
    bool all_zero = true;
    for (std::size_t t = 0; t < x.num_types() && all_zero; ++t) {
      all_zero = x.cost[t][a] == 0;
    }
    if (all_zero) return static_cast<int>(a);
  }
  return -1;
}

ValidationReport Validate(const Instance& x) {
  ValidationReport report;
  auto& v = report.violations;
  if (!CheckShape(x, &v)) return report;
  const std::size_t l = x.num_types(), n = x.num_actions(), m = x.num_outcomes();

  Rational mu_sum = 0;
  for (std::size_t t = 0; t < l; ++t) {
    if (x.mu[t] < 0) v.push_back("negative probability for type " + x.types[t]);
    mu_sum += x.mu[t];
  }
  if (mu_sum != 1) v.push_back("type probabilities do not sum to 1 (sum " + ToString(mu_sum) + ")");

  for (std::size_t t = 0; t < l; ++t) {
    for (std::size_t a = 0; a < n; ++a) {
      const std::string key = x.types[t] + "/" + x.actions[a];
      Rational sum = 0;
      bool negative = false;
      for (const auto& f : x.dist[t][a]) {
        negative |= f < 0;
        sum += f;
      }
      if (negative) v.push_back("negative probability in distribution " + key);
      if (sum != 1) v.push_back("distribution not stochastic: " + key + " sums to " + ToString(sum));
      const Rational& c = x.cost[t][a];
      if (c < 0 || c > 1) v.push_back("cost out of [0,1] for " + key);
    }
  }
  for (std::size_t o = 0; o < m; ++o) {
    if (x.reward[o] < 0 || x.reward[o] > 1) v.push_back("reward out of [0,1] for " + x.outcomes[o]);
  }
  if (ZeroCostAction(x) < 0) v.push_back("no action has zero cost for every type");
  if (!v.empty()) return report;

  // Strip types that never occur and outcomes that are never reached.
  std::vector<std::size_t> keep_t, keep_o;
  for (std::size_t t = 0; t < l; ++t) {
    if (x.mu[t] > 0) keep_t.push_back(t);
  }
  for (std::size_t o = 0; o < m; ++o) {
    bool reached = false;
    for (std::size_t t : keep_t) {
      for (std::size_t a = 0; a < n && !reached; ++a) reached = x.dist[t][a][o] > 0;
    }
    if (reached) keep_o.push_back(o);
  }
  Instance& y = report.normalized;
  y.actions = x.actions;
  for (std::size_t o : keep_o) {
    y.outcomes.push_back(x.outcomes[o]);
    y.reward.push_back(x.reward[o]);
  }
  for (std::size_t t : keep_t) {
    y.types.push_back(x.types[t]);
    y.mu.push_back(x.mu[t]);
    y.cost.push_back(x.cost[t]);
    std::vector<std::vector<Rational>> rows;
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<Rational> row;
      for (std::size_t o : keep_o) row.push_back(x.dist[t][a][o]);
      rows.push_back(std::move(row));
    }
    y.dist.push_back(std::move(rows));
  }
  return report;
}

Instance Normalize(const Instance& x) {
  ValidationReport report = Validate(x);
  if (!report.ok()) {
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& s : report.violations) msg << "\n  " << s;
    throw InvalidInput(msg.str());
  }
  return std::move(report.normalized);
}

std::size_t InstanceSize(const Instance& x) {
  std::size_t bits = 0;
  for (const auto& q : x.mu) bits += BitLength(q);
  for (const auto& q : x.reward) bits += BitLength(q);
  for (const auto& row : x.cost) {
    for (const auto& q : row) bits += BitLength(q);
  }
  for (const auto& per_type : x.dist) {
    for (const auto& row : per_type) {
      for (const auto& q : row) bits += BitLength(q);
    }
  }
  return bits;
}

void CheckMenuShape(const Instance& x, const DeterministicMenu& menu) {
  if (menu.entries.size() != x.num_types()) {
    throw InvalidInput("menu has " + std::to_string(menu.entries.size()) +
                       " entries but the instance has " + std::to_string(x.num_types()) +
                       " types");
  }
  for (const auto& p : menu.entries) {
    if (p.size() != x.num_outcomes()) throw InvalidInput("contract has wrong length");
    for (const auto& v : p) {
      if (v < 0) throw InvalidInput("negative payment in contract");
    }
  }
  if (menu.recommendations) {
    if (menu.recommendations->size() != x.num_types()) {
      throw InvalidInput("recommendations do not cover every type");
    }
    for (int a : *menu.recommendations) {
      if (a < 0 || static_cast<std::size_t>(a) >= x.num_actions()) {
        throw InvalidInput("recommended action out of range");
      }
    }
  }
}

void CheckMenuShape(const Instance& x, const RandomizedMenu& menu) {
  if (menu.entries.size() != x.num_types()) {
    throw InvalidInput("menu has " + std::to_string(menu.entries.size()) +
                       " entries but the instance has " + std::to_string(x.num_types()) +
                       " types");
  }
  for (const auto& support : menu.entries) {
    if (support.empty()) throw InvalidInput("empty support in randomized menu");
    Rational total = 0;
    for (const auto& wc : support) {
      if (wc.pay.size() != x.num_outcomes()) throw InvalidInput("contract has wrong length");
      for (const auto& v : wc.pay) {
        if (v < 0) throw InvalidInput("negative payment in contract");
      }
      if (wc.weight < 0) throw InvalidInput("negative weight in randomized menu");
      total += wc.weight;
    }
    if (total != 1) throw InvalidInput("weights do not sum to 1");
  }
}

Rational Expect(const Instance& x, std::size_t type, std::size_t action,
                const std::vector<Rational>& values) {
  Rational s = 0;
  const auto& f = x.dist[type][action];
  for (std::size_t o = 0; o < f.size(); ++o) {
    if (f[o] != 0 && values[o] != 0) s += f[o] * values[o];
  }
  return s;
}

}  // namespace cmenu
