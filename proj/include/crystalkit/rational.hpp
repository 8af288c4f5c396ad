#pragma once

// Exact rationals (GMP) and rational functions in one variable over Q.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace crystalkit {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
// "a/b" in lowest terms, "a" when the denominator is 1.
std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& text);

// Integer polynomial, low-to-high, trimmed.
using ZPoly = std::vector<mpz_class>;

std::string zpoly_str(const ZPoly& a, const char* var = "x");

class RationalFn {
 public:
  RationalFn();  // zero
  RationalFn(ZPoly num, ZPoly den);
  static RationalFn monomial(long coeff, unsigned degree);

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }

  Rational evaluate(const Rational& x) const;
  // "0", "num", or "(num)/(den)" with single-term parts left unparenthesised.
  std::string str() const;

 private:
  void canonicalize();
  ZPoly num_, den_;
};

}  // namespace crystalkit
