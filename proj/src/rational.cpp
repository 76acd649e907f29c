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

#include <cctype>
#include <cmath>

namespace cmenu {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class ParseInteger(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!AllDigits(s)) {
    throw InvalidInput("malformed rational '" + std::string(whole) + "'");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

Rational ParseDecimal(std::string_view s, std::string_view whole) {
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mpz_class ez = ParseInteger(s.substr(e + 1), whole);
    if (!ez.fits_slong_p() || abs(ez) > 100000) {
      throw InvalidInput("exponent out of range in '" + std::string(whole) + "'");
    }
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long scale = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !AllDigits(int_part)) ||
        (!frac_part.empty() && !AllDigits(frac_part))) {
      throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    scale = static_cast<long>(frac_part.size());
  } else {
    if (!AllDigits(s)) {
      throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    }
    digits = std::string(s);
  }
  Rational q(mpz_class(digits, 10));
  long shift = exponent - scale;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  if (shift >= 0) {
    q *= ten_pow;
  } else {
    q /= ten_pow;
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InvalidInput("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = ParseInteger(s.substr(0, slash), text);
    mpz_class den = ParseInteger(s.substr(slash + 1), text);
    if (den == 0) {
      throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return ParseDecimal(s, text);
}

std::string ToString(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational FromDouble(double x) {
  if (!std::isfinite(x)) throw InvalidInput("non-finite value");
  Rational q(x);
  q.canonicalize();
  return q;
}

std::size_t BitLength(const Rational& q) {
  auto bits = [](const mpz_class& z) -> std::size_t {
    if (z == 0) return 1;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
  };
  return bits(q.get_num()) + bits(q.get_den());
}

Rational Pow(const Rational& x, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational SqrtUpper(const Rational& q, unsigned precision_bits) {
  if (q < 0) throw InvalidInput("square root of a negative rational");
  mpz_class num_root, den_root;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
    mpz_sqrt(num_root.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), q.get_den_mpz_t());
    Rational r(num_root, den_root);
    r.canonicalize();
    return r;
  }
  // ceil(sqrt(q) * 2^b) = ceil(sqrt(q * 4^b)); use isqrt on floor(q * 4^b).
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 2 * precision_bits);
  mpz_class scaled = (q.get_num() * scale) / q.get_den();
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, precision_bits);
  Rational r(root, denom);
  r.canonicalize();
  while (r * r < q) {
    r += Rational(1, denom);
    r.canonicalize();
  }
  return r;
}

Rational FloorToDyadic(double x, unsigned bits) {
  double scaled = std::ldexp(x, static_cast<int>(bits));
  mpz_class z(std::floor(scaled));
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, bits);
  Rational q(z, denom);
  q.canonicalize();
  return q;
}

std::vector<double> ToDoubles(std::span<const Rational> v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

}  // namespace cmenu
