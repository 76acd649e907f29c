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

// Randomized checks of invariants that every module promises.

#include <random>

#include "cmenu/agent.hpp"
#include "cmenu/det_menu.hpp"
#include "cmenu/generators.hpp"
#include "cmenu/model_io.hpp"
#include "cmenu/oracles.hpp"
#include "cmenu/rand_menu.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace cmenu {
namespace {

using testing::Q;

// Adds a type that never occurs and an outcome that is never reached.
Instance Pad(const Instance& x) {
  Instance y = x;
  y.types.push_back("ghost");
  y.mu.push_back(0);
  y.outcomes.push_back("never");
  y.reward.push_back(Q("1/2"));
  for (auto& per_type : y.dist) {
    for (auto& row : per_type) row.push_back(0);
  }
  y.dist.push_back(y.dist[0]);
  y.cost.push_back(y.cost[0]);
  // the ghost type could reach the extra outcome, but it has no mass
  y.dist.back()[0].back() = y.dist.back()[0][0];
  y.dist.back()[0][0] = 0;
  return y;
}

TEST_CASE("normalization is idempotent and keeps optimal values") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Instance x = RandomInstance({2, 3, 2, seed, 0.2});
    Instance padded = Pad(x);
    REQUIRE(Validate(padded).ok());
    Instance back = Normalize(padded);
    CHECK(back == Normalize(x));
    CHECK(Validate(back).ok());
    CHECK(Normalize(back) == back);
    CHECK(SolveConstantTypes(padded).value == SolveConstantTypes(back).value);
    CHECK(SolveTwoOutcomes(x).value == SolveTwoOutcomes(back).value);
    CHECK(SolveRandomized(back, Q("1/20")).value == SolveRandomized(Normalize(x), Q("1/20")).value);
  }
}

TEST_CASE("serialization is bit exact") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> big(1, 1L << 40);
  for (int rep = 0; rep < 20; ++rep) {
    Instance x = RandomInstance({2, 2, 3, static_cast<std::uint64_t>(rep), 0});
    const long den = big(rng);
    x.reward[0] = Fraction(big(rng) % den, den);
    x.mu[0] = Fraction(den - 1, 3 * den);
    x.mu[1] = 1 - x.mu[0];
    Instance y = InstanceFromJson(ParseJsonExact(InstanceToJson(x).dump()));
    CHECK(y == x);
  }
}

TEST_CASE("agent utility is monotone in payments and ties are stable") {
  std::mt19937_64 rng(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance x = RandomInstance({2, 4, 3, seed, 0.3});
    for (int rep = 0; rep < 10; ++rep) {
      Contract p = testing::RandomContract(rng, 3);
      for (std::size_t t = 0; t < 2; ++t) {
        BestResponse base = ComputeBestResponse(x, t, p);
        for (std::size_t o = 0; o < 3; ++o) {
          Contract q = p;
          q[o] += Q("1/7");
          CHECK(ComputeBestResponse(x, t, q).agent_utility >= base.agent_utility);
        }
        BestResponse again = ComputeBestResponse(x, t, p);
        CHECK(again.action == base.action);
        CHECK(again.tied_set == base.tied_set);
      }
    }
  }
}

TEST_CASE("DSIC check of point masses is the deterministic condition") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance x = RandomInstance({3, 3, 2, seed, 0.2});
    DeterministicMenu menu;
    for (int t = 0; t < 3; ++t) menu.entries.push_back(testing::RandomContract(rng, 2, 8, 4));
    bool dsic = true;
    for (std::size_t t = 0; t < 3; ++t) {
      for (std::size_t s = 0; s < 3; ++s) {
        // max over actions of the utility, taken directly
        auto best = [&](const Contract& p) {
          Rational b;
          for (std::size_t a = 0; a < 3; ++a) {
            Rational u = -x.cost[t][a];
            for (std::size_t o = 0; o < 2; ++o) u += x.dist[t][a][o] * p[o];
            if (a == 0 || u > b) b = u;
          }
          return b;
        };
        dsic &= best(menu.entries[t]) >= best(menu.entries[s]);
      }
    }
    CHECK(VerifyDsic(x, ToRandomized(menu)).dsic == dsic);
    CHECK(VerifyDsic(x, menu).dsic == dsic);
  }
}

TEST_CASE("every solver returns a DSIC menu") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance x = RandomInstance({2, 3, 2, seed, 0.2});
    CHECK(VerifyDsic(x, SolveTwoOutcomes(x).menu).dsic);
    CHECK(VerifyDsic(x, SolveConstantTypes(x).menu).dsic);
    CHECK(VerifyDsic(x, PtasConstantOutcomes(x, Q("1/4")).menu).dsic);
    CHECK(VerifyDsic(x, SolveRandomized(x, Q("1/20")).menu).dsic);
    CHECK(VerifyDsic(x, GridDetMenu(x, {Q("1"), Q("1/8")}).menu).dsic);
  }
}

TEST_CASE("raising a reward never lowers the deterministic optimum") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Instance x = RandomInstance({2, 3, 3, seed, 0.2});
    Rational before = SolveConstantTypes(x).value;
    for (std::size_t o = 0; o < 3; ++o) {
      Instance y = x;
      y.reward[o] = (y.reward[o] + 1) / 2;
      CHECK(SolveConstantTypes(y).value >= before);
    }
  }
}

TEST_CASE("conversion loses at most 2 sqrt(eps)") {
  std::mt19937_64 rng(4);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Instance x = RandomInstance({3, 3, 2, seed, 0.2});
    for (const char* e : {"1/100", "1/25"}) {
      const Rational eps = Q(e);
      auto approx = testing::PerturbedApproxMenu(x, SolveConstantTypes(x).menu, eps, rng);
      if (!approx) continue;
      ++checked;
      DeterministicMenu out = ConvertToDsic(x, *approx, eps);
      CHECK(VerifyDsic(x, out).dsic);
      CHECK(MenuValue(x, out) >= ApproxMenuValue(x, *approx) - 2 * SqrtUpper(eps));
    }
  }
  CHECK(checked >= 40);
}

TEST_CASE("PTAS value is within delta of the exact value") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance x = RandomInstance({2, 2, 3, seed, 0.2});
    Rational exact = SolveConstantTypes(x).value;
    for (const char* d : {"1/4", "1/2", "1"}) {
      Rational v = PtasConstantOutcomes(x, Q(d)).value;
      CHECK(v >= exact - Q(d));
      CHECK(v <= exact);
    }
  }
}

TEST_CASE("grid oracles bracket the solvers") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Instance x = RandomInstance({2, 2, 2, seed, 0.2});
    Rational grid = GridDetMenu(x, {Q("1"), Q("1/16")}).value;
    CHECK(grid <= SolveConstantTypes(x).value);
    RandResult r = SolveRandomized(x, Q("1/20"));
    CHECK(GridRandMenu(x, {Q("1"), Q("1/8")}, 2) <= SupUpperBound(r));
    CHECK(r.value >= SolveConstantTypes(x).value);
  }
}

TEST_CASE("final dual point satisfies every constraint at region vertices") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Instance x = RandomInstance({2, 2, 2, seed, 0.2});
    RandResult r = SolveRandomized(x, Q("1/20"));
    REQUIRE(r.converged);
    MasterSolution final_master = SolveMaster(x, r.pool);
    CHECK(final_master.value == r.value);
    std::vector<Contract> verts;
    for (int a0 = 0; a0 < 2; ++a0) {
      for (int a1 = 0; a1 < 2; ++a1) {
        auto v = EnumerateRegionVertices(x, r.bound, {a0, a1});
        verts.insert(verts.end(), v.begin(), v.end());
      }
    }
    REQUIRE(!verts.empty());
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    for (int k = 0; k < 100; ++k) {
      const Contract& p = verts[pick(rng)];
      for (std::size_t t = 0; t < 2; ++t) CHECK(DualViolation(x, final_master.dual, t, p) <= 0);
    }
  }
}

TEST_CASE("simplify is idempotent and never hurts") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance x = RandomInstance({3, 3, 2, seed, 0.2});
    RandResult r = SolveRandomized(x, Q("1/20"));
    RandomizedMenu s = SimplifyMenu(x, r.menu);
    CHECK(SimplifyMenu(x, s) == s);
    CHECK(MenuValue(x, s) >= r.value);
    CHECK(VerifyDsic(x, s).dsic);
  }
}

}  // namespace
}  // namespace cmenu
