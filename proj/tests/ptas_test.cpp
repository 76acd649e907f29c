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

#include <random>

#include "cmenu/agent.hpp"
#include "cmenu/det_menu.hpp"
#include "cmenu/generators.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace cmenu {
namespace {

using testing::Q;

TEST_CASE("delta = 1 is satisfied by anything at least as good as the zero menu") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Instance x = RandomInstance({2, 3, 2, seed, 0.2});
    PtasResult r = PtasConstantOutcomes(x, Rational(1));
    DeterministicMenu zero{std::vector<Contract>(2, Contract(2, Rational(0))), std::nullopt};
    CHECK(r.value >= MenuValue(x, zero));
    CHECK(r.value >= SolveConstantTypes(x).value - 1);
    CHECK(VerifyDsic(x, r.menu).dsic);
  }
}

TEST_CASE("within delta of the two-outcome optimum") {
  const Rational delta = Q("1/4");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance x = RandomInstance({2, 3, 2, seed, 0.2});
    PtasResult r = PtasConstantOutcomes(x, delta);
    Rational exact = SolveTwoOutcomes(x).value;
    CHECK(r.value >= exact - delta);
    CHECK(r.value <= exact);
    CHECK(VerifyDsic(x, r.menu).dsic);
    CHECK(MenuValue(x, r.menu) == r.value);
  }
}

TEST_CASE("within delta of the profile enumeration with three outcomes") {
  const Rational delta = Q("1/4");
  for (std::uint64_t seed = 20; seed < 28; ++seed) {
    Instance x = RandomInstance({2, 2, 3, seed, 0.3});
    PtasResult r = PtasConstantOutcomes(x, delta);
    Rational exact = SolveConstantTypes(x).value;
    CHECK(r.value >= exact - delta);
    CHECK(r.value <= exact);
    CHECK(VerifyDsic(x, r.menu).dsic);
  }
}

TEST_CASE("both enumeration modes find the same value") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Instance x = RandomInstance({2, 2, 2, seed, 0.2});
    PtasOptions vertex;
    vertex.mode = PtasMode::kVertexEnum;
    PtasResult a = PtasConstantOutcomes(x, Q("1/2"));
    PtasResult b = PtasConstantOutcomes(x, Q("1/2"), vertex);
    CHECK(a.value == b.value);
    CHECK(VerifyDsic(x, b.menu).dsic);
  }
}

TEST_CASE("serial and parallel agree") {
  Instance x = RandomInstance({3, 3, 2, 4, 0.2});
  PtasOptions serial;
  serial.exec = Exec::kSerial;
  PtasResult a = PtasConstantOutcomes(x, Q("1/4"), serial);
  PtasResult b = PtasConstantOutcomes(x, Q("1/4"));
  CHECK(a.value == b.value);
  CHECK(a.menu == b.menu);
}

TEST_CASE("contract budget") {
  CHECK(PtasContractBound(Q("1/2"), 2) > PtasContractBound(Rational(1), 2));
  CHECK(PtasContractBound(Q("1/4"), 3) > PtasContractBound(Q("1/4"), 2));
  Instance x = RandomInstance({3, 2, 2, 1, 0});
  PtasResult r = PtasConstantOutcomes(x, Q("1/4"));
  CHECK(r.k >= 3);
  CHECK(r.k_used == 3);
  CHECK(r.enumeration > 0);
}

TEST_CASE("caps and preconditions") {
  Instance four = RandomInstance({2, 2, 4, 1, 0});
  CHECK_THROWS_AS(PtasConstantOutcomes(four, Q("1/4")), CapExceeded);
  Instance x = RandomInstance({4, 3, 2, 1, 0});
  PtasOptions tight;
  tight.cap = 10;
  try {
    PtasConstantOutcomes(x, Q("1/4"), tight);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.count() > 10);
  }
  CHECK_THROWS_AS(PtasConstantOutcomes(x, Rational(0)), InvalidInput);
  CHECK_THROWS_AS(PtasConstantOutcomes(x, Q("5/4")), InvalidInput);
}

}  // namespace
}  // namespace cmenu
