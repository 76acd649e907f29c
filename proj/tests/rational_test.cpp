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

#include "cmenu/rational.hpp"

#include <string>

#include "doctest.h"

namespace cmenu {
namespace {

TEST_CASE("ParseRational accepts fractions, integers and decimals") {
  CHECK(ParseRational("3/4") == Rational(3, 4));
  CHECK(ParseRational(" -6/8 ") == Rational(-3, 4));
  CHECK(ParseRational("7") == 7);
  CHECK(ParseRational("0.05") == Rational(1, 20));
  CHECK(ParseRational("-1.25") == Rational(-5, 4));
  // canonical form, so equality and printing agree
  CHECK(ToString(ParseRational("2/24")) == "1/12");
}

TEST_CASE("ParseRational rejects junk") {
  CHECK_THROWS_AS(ParseRational("1/0"), InvalidInput);
  CHECK_THROWS_AS(ParseRational(""), InvalidInput);
  CHECK_THROWS_AS(ParseRational("1/2/3"), InvalidInput);
  CHECK_THROWS_AS(ParseRational("abc"), InvalidInput);
  CHECK_THROWS_AS(ParseRational("1e"), InvalidInput);
  CHECK(ParseRational("1e-3") == Rational(1, 1000));
}

TEST_CASE("ToString round trips") {
  for (const char* s : {"0", "1", "-1", "1/3", "-7/9", "1234567890123456789012345678901/2"}) {
    CHECK(ToString(ParseRational(s)) == std::string(s));
  }
}

TEST_CASE("BitLength counts both parts") {
  CHECK(BitLength(Rational(0)) == 2);
  CHECK(BitLength(Rational(1)) == 2);
  CHECK(BitLength(Rational(1, 3)) == 3);
  CHECK(BitLength(Rational(3, 4)) == 5);
  // doubling the bit length of the denominator
  CHECK(BitLength(Fraction(1, 255)) == 9);
  CHECK(BitLength(Fraction(1, 65535)) == 17);
}

TEST_CASE("SqrtUpper is exact on squares and an upper bound otherwise") {
  CHECK(SqrtUpper(Rational(1, 100)) == Rational(1, 10));
  CHECK(SqrtUpper(Rational(9, 4)) == Rational(3, 2));
  CHECK(SqrtUpper(Rational(0)) == 0);
  for (int k : {2, 3, 5, 7, 10}) {
    Rational q = Fraction(k, 3);
    Rational r = SqrtUpper(q, 30);
    CHECK(r * r >= q);
    Rational below = r - Fraction(1, mpz_class(1) << 30);
    CHECK(below * below < q);
  }
  CHECK_THROWS_AS(SqrtUpper(Rational(-1)), InvalidInput);
}

TEST_CASE("Pow and FloorToDyadic") {
  CHECK(Pow(Rational(1, 2), 4) == Rational(1, 16));
  CHECK(Pow(Rational(-2, 3), 3) == Rational(-8, 27));
  CHECK(Pow(Rational(5), 0) == 1);
  CHECK(FloorToDyadic(0.75, 2) == Rational(3, 4));
  CHECK(FloorToDyadic(0.7, 3) == Rational(5, 8));
  CHECK(FloorToDyadic(-0.1, 2) == Rational(-1, 4));
  Rational c = FloorToDyadic(0.3090169943749474, 40);
  CHECK(c <= FromDouble(0.3090169943749474));
  CHECK(FromDouble(0.3090169943749474) - c < Fraction(1, mpz_class(1) << 40));
}

TEST_CASE("FromDouble is exact and rejects non-finite values") {
  CHECK(FromDouble(0.5) == Rational(1, 2));
  CHECK(FromDouble(0.1).get_d() == 0.1);
  CHECK_THROWS_AS(FromDouble(1.0 / 0.0), InvalidInput);
}

TEST_CASE("error exit codes") {
  CHECK(InvalidInput("x").exit_code() == 2);
  CHECK(SolverError("x").exit_code() == 1);
  CapExceeded cap("x", 12.0);
  CHECK(cap.exit_code() == 1);
  CHECK(cap.count() == 12.0);
}

}  // namespace
}  // namespace cmenu
