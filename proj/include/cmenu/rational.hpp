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

#ifndef CMENU_RATIONAL_HPP_
#define CMENU_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmenu {

using Rational = mpq_class;

// Base of every error the library raises. `exit_code` follows the CLI
// convention: 1 for solver failures, 2 for invalid input.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(what, 2) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error(what, 1) {}
};

// Raised before an exponential enumeration starts when its size exceeds the
// configured cap. `count` is the enumeration size that was refused.
class CapExceeded : public SolverError {
 public:
  CapExceeded(const std::string& what, double count)
      : SolverError(what), count_(count) {}
  double count() const { return count_; }

 private:
  double count_;
};

// Parses "3", "-2", "0.125", "1e-3", "3/8". Throws InvalidInput on anything
// else, including a zero denominator.
Rational ParseRational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string ToString(const Rational& q);

// Exact rational value of a finite double.
Rational FromDouble(double x);

// Number of bits in |numerator| plus number of bits in the denominator;
// zero counts as one bit.
std::size_t BitLength(const Rational& q);

// Exact square root if `q` is a perfect square of a rational, otherwise the
// smallest multiple of 2^-precision_bits that is >= sqrt(q). `q` must be >= 0.
Rational SqrtUpper(const Rational& q, unsigned precision_bits = 48);

// x^e for a nonnegative integer exponent, computed on numerator and
// denominator separately.
Rational Pow(const Rational& x, unsigned long e);

// Largest multiple of 2^-bits that is <= x.
Rational FloorToDyadic(double x, unsigned bits);

// num/den in lowest terms. mpq_class's two-argument constructor does not
// reduce, and unreduced values break equality.
inline Rational Fraction(const mpz_class& num, const mpz_class& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline double ToDouble(const Rational& q) { return q.get_d(); }

std::vector<double> ToDoubles(std::span<const Rational> v);

}  // namespace cmenu

#endif  // CMENU_RATIONAL_HPP_
