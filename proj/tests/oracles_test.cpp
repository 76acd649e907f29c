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

#include <random>

#include "cmenu/agent.hpp"
#include "cmenu/det_menu.hpp"
#include "cmenu/generators.hpp"
#include "cmenu/lp.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace cmenu {
namespace {

using testing::Make;
using testing::Q;

Rational ZeroMenuValue(const Instance& x) {
  return MenuValue(x, DeterministicMenu{std::vector<Contract>(x.num_types(), Contract(x.num_outcomes(), Rational(0))),
                                        std::nullopt});
}

TEST_CASE("grid values") {
  CHECK(GridValues({Q("1"), Q("1/4")}) == std::vector<Rational>{0, Q("1/4"), Q("1/2"), Q("3/4"), 1});
  CHECK(GridValues({Q("1"), Q("1/3")}).size() == 4);
  CHECK(GridValues({Q("7/10"), Q("1/4")}).back() == Q("7/10"));  // cap always included
  CHECK(GridValues({Q("0"), Q("1/4")}) == std::vector<Rational>{0});
  CHECK_THROWS_AS(GridValues({Q("1"), Q("0")}), InvalidInput);
}

TEST_CASE("grid menu with cap 0 is the zero menu") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Instance x = RandomInstance({3, 3, 2, seed, 0.2});
    GridDetResult r = GridDetMenu(x, {Q("0"), Q("1/4")});
    CHECK(r.value == ZeroMenuValue(x));
    for (const auto& p : r.menu.entries) CHECK(p == Contract(2, Rational(0)));
  }
}

TEST_CASE("grid menu sits below the exact optimum") {
  const Rational step = Q("1/8");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance x = RandomInstance({1, 2, 2, seed, 0});
    GridDetResult g = GridDetMenu(x, {Q("1"), step});
    Rational exact = SolveTwoOutcomes(x).value;
    CHECK(g.value <= exact);
    CHECK(exact - g.value <= 2 * step);
    CHECK(VerifyDsic(x, g.menu).dsic);
    CHECK(MenuValue(x, g.menu) == g.value);
  }
}

TEST_CASE("refining the grid never hurts") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Instance x = RandomInstance({2, 3, 2, seed, 0.2});
    Rational coarse = GridDetMenu(x, {Q("1"), Q("1/8")}).value;
    Rational fine = GridDetMenu(x, {Q("1"), Q("1/16")}).value;
    CHECK(fine >= coarse);
    Rational exact = SolveConstantTypes(x).value;
    CHECK(fine <= exact);
  }
}

TEST_CASE("grid menu agrees with an exhaustive scan on a tiny grid") {
  // every pair of grid contracts for two types, checked directly
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Instance x = RandomInstance({2, 3, 2, seed, 0.2});
    const GridSpec grid{Q("1"), Q("1/4")};
    std::vector<Rational> vals = GridValues(grid);
    std::vector<Contract> contracts;
    for (const auto& a : vals) {
      for (const auto& b : vals) contracts.push_back({a, b});
    }
    Rational best = -1;
    for (const auto& p : contracts) {
      for (const auto& q : contracts) {
        DeterministicMenu menu{{p, q}, std::nullopt};
        if (!VerifyDsic(x, menu).dsic) continue;
        best = std::max(best, MenuValue(x, menu));
      }
    }
    CHECK(GridDetMenu(x, grid).value == best);
    GridDetOptions serial;
    serial.exec = Exec::kSerial;
    CHECK(GridDetMenu(x, grid, serial).value == best);
  }
}

TEST_CASE("branch and bound agrees with the level table") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance x = Normalize(RandomInstance({2 + seed % 3, 3, 2, 300 + seed, 0.25}));
    GridDetOptions search_only;
    search_only.level_tables = false;
    for (const char* step : {"1/4", "1/8"}) {
      GridDetResult table = GridDetMenu(x, {Q("1"), Q(step)});
      GridDetResult search = GridDetMenu(x, {Q("1"), Q(step)}, search_only);
      CHECK(search.value == table.value);
      CHECK(VerifyDsic(x, search.menu).dsic);
      search_only.exec = Exec::kSerial;
      CHECK(GridDetMenu(x, {Q("1"), Q(step)}, search_only).value == table.value);
      search_only.exec = Exec::kParallel;
    }
  }
}

TEST_CASE("grid menu budget") {
  Instance x = RandomInstance({3, 3, 3, 1, 0.2});
  GridDetOptions tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(GridDetMenu(x, {Q("1"), Q("1/8")}, tiny), CapExceeded);
}

TEST_CASE("randomized grid lower bound") {
  Instance x = NoMaximumFixture();
  CHECK(GridRandMenu(x, {Q("0"), Q("1")}, 3) == ZeroMenuValue(x));

  // zero, and the two contracts of the near-optimal menu at eps = 1/20
  std::vector<std::vector<Rational>> values{{0}, {0, Q("1/4")}, {0}, {0, Q("5/3")}};
  Rational v = GridRandMenu(x, values, 3);
  CHECK(v >= Q("7/10"));
  CHECK(v < Q("3/4"));

  // adding columns never lowers the value
  std::vector<std::vector<Rational>> more{{0, Q("1/2")}, {0, Q("1/4"), Q("1/2")}, {0}, {0, Q("5/3"), Q("10/3")}};
  CHECK(GridRandMenu(x, more, 3) >= v);

  CHECK_THROWS_AS(GridRandMenu(x, values, 0), InvalidInput);
  CHECK_THROWS_AS(GridRandMenu(x, values, 4), InvalidInput);
  CHECK_THROWS_AS(GridRandMenu(x, {Q("1"), Q("1/16")}, 3), CapExceeded);
}

TEST_CASE("randomized grid bound is below the deterministic-free upper bound") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Instance x = RandomInstance({2, 2, 2, seed, 0.2});
    Rational lower = GridRandMenu(x, {Q("2"), Q("1/8")}, 2);
    RandResult r = SolveRandomized(x, Q("1/20"));
    CHECK(lower <= SupUpperBound(r));
    CHECK(lower >= GridDetMenu(x, {Q("2"), Q("1/8")}).value);
  }
}

TEST_CASE("region vertices: the origin is there for a zero-cost action") {
  Instance x = Make({"1"}, {{{"1", "0"}, {"0", "1"}}}, {{"0", "1/2"}}, {"0", "1"});
  PaymentBound b = ComputePaymentBound(x, Q("1/20"));
  b.c = Q("1/10");
  std::vector<Contract> v = EnumerateRegionVertices(x, b, {0});
  CHECK(std::find(v.begin(), v.end(), Contract{0, 0}) != v.end());
  // a1 is the best response as long as p2 - p1 <= 1/2, which the tiny box guarantees
  CHECK(v.size() == 4);
}

TEST_CASE("region vertices: a dominated action gives an empty region") {
  // a2 has a1's distribution but costs more
  Instance x = Make({"1/2", "1/2"}, {{{"1/2", "1/2"}, {"1/2", "1/2"}}, {{"1", "0"}, {"0", "1"}}},
                    {{"0", "1/4"}, {"0", "0"}}, {"0", "1"});
  PaymentBound b = ComputePaymentBound(x, Q("1/20"));
  CHECK(EnumerateRegionVertices(x, b, {1, 0}).empty());
  CHECK(EnumerateRegionVertices(x, b, {1, 1}).empty());
  CHECK_FALSE(EnumerateRegionVertices(x, b, {0, 1}).empty());
  CHECK_THROWS_AS(EnumerateRegionVertices(x, b, {0}), InvalidInput);
  CHECK_THROWS_AS(EnumerateRegionVertices(x, b, {0, 5}), InvalidInput);
  CHECK_THROWS_AS(EnumerateRegionVertices(x, b, {0, 1}, 1), CapExceeded);
}

TEST_CASE("region vertices: support functions match the LP") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance x = RandomInstance({2, 2, 2, seed, 0.2});
    PaymentBound b = ComputePaymentBound(x, Q("1/20"));
    for (int a0 = 0; a0 < 2; ++a0) {
      for (int a1 = 0; a1 < 2; ++a1) {
        const std::vector<int> tuple{a0, a1};
        std::vector<Contract> verts = EnumerateRegionVertices(x, b, tuple);
        for (const auto& p : verts) {
          for (std::size_t t = 0; t < 2; ++t) {
            auto tied = ComputeBestResponse(x, t, p).tied_set;
            CHECK(std::find(tied.begin(), tied.end(), tuple[t]) != tied.end());
          }
        }
        for (std::size_t o = 0; o < 2; ++o) {
          for (int sign : {1, -1}) {
            LinearProgram lp;
            for (std::size_t k = 0; k < 2; ++k) lp.AddVariable(false, b.c);
            lp.objective = {{static_cast<int>(o), Rational(sign)}};
            for (std::size_t t = 0; t < 2; ++t) {
              for (int a = 0; a < 2; ++a) {
                if (a == tuple[t]) continue;
                SparseRow row;
                for (std::size_t k = 0; k < 2; ++k) {
                  row.emplace_back(k, x.dist[t][tuple[t]][k] - x.dist[t][a][k]);
                }
                lp.AddRow(row, Relation::kGreaterEqual, x.cost[t][tuple[t]] - x.cost[t][a]);
              }
            }
            LPSolution s = Solve(lp);
            if (verts.empty()) {
              CHECK(s.status == LPStatus::kInfeasible);
              continue;
            }
            REQUIRE(s.status == LPStatus::kOptimal);
            Rational best = Rational(sign * verts[0][o]);
            for (const auto& p : verts) best = std::max(best, Rational(sign * p[o]));
            CHECK(s.value == best);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace cmenu
