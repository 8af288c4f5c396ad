#include "crystalkit/rational.hpp"

#include <algorithm>

#include "crystalkit/error.hpp"

namespace crystalkit {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  require(!text.empty() && q.set_str(text, 10) == 0 && q.get_den() != 0, ErrorCode::ParseError,
          "bad rational '" + text + "'");
  q.canonicalize();
  return q;
}

namespace {

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  ztrim(c);
  return c;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  ztrim(c);
  return c;
}

mpz_class content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

ZPoly primitive(const ZPoly& a) {
  mpz_class g = content(a);
  if (g == 0) return {};
  ZPoly out;
  for (const auto& c : a) out.push_back(c / g);
  return out;
}

// Pseudo-remainder of a by b over Z.
ZPoly prem(ZPoly a, const ZPoly& b) {
  while (!a.empty() && a.size() >= b.size()) {
    mpz_class la = a.back();
    const mpz_class& lb = b.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= la * b[j];
    ztrim(a);
  }
  return a;
}

// Primitive gcd over Z[x] (content ignored), leading coefficient positive.
ZPoly zgcd(ZPoly a, ZPoly b) {
  a = primitive(a);
  b = primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = primitive(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0) {
    for (auto& c : a) c = -c;
  }
  return a;
}

// Exact division over Z[x]; b divides a.
ZPoly zdiv_exact(ZPoly a, const ZPoly& b) {
  if (a.empty()) return {};
  ZPoly q(a.size() - b.size() + 1, 0);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    mpz_class c = a.back() / b.back();
    require(c * b.back() == a.back(), ErrorCode::OracleMismatch, "inexact polynomial division");
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    ztrim(a);
  }
  require(a.empty(), ErrorCode::OracleMismatch, "inexact polynomial division");
  ztrim(q);
  return q;
}

std::string term_str(const mpz_class& c, std::size_t deg, const char* var, bool first) {
  std::string s;
  mpz_class a = abs(c);
  if (!first) s += c < 0 ? "-" : "+";
  else if (c < 0) s += "-";
  if (deg == 0 || a != 1) s += a.get_str();
  if (deg >= 1) {
    if (deg == 0 || a != 1) s += "*";
    s += var;
    if (deg > 1) s += "^" + std::to_string(deg);
  }
  return s;
}

std::size_t term_count(const ZPoly& a) {
  return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [](const mpz_class& c) { return c != 0; }));
}

}  // namespace

std::string zpoly_str(const ZPoly& a, const char* var) {
  if (a.empty()) return "0";
  std::string s;
  bool first = true;
  for (std::size_t d = a.size(); d-- > 0;) {
    if (a[d] == 0) continue;
    s += term_str(a[d], d, var, first);
    first = false;
  }
  return s;
}

RationalFn::RationalFn() : den_{1} {}

RationalFn::RationalFn(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) {
  ztrim(num_);
  ztrim(den_);
  require(!den_.empty(), ErrorCode::BadShape, "zero denominator");
  canonicalize();
}

RationalFn RationalFn::monomial(long coeff, unsigned degree) {
  ZPoly n(degree + 1, 0);
  n[degree] = coeff;
  return RationalFn(n, {1});
}

void RationalFn::canonicalize() {
  if (num_.empty()) {
    den_ = {1};
    return;
  }
  ZPoly g = zgcd(num_, den_);
  if (g.size() > 1) {
    num_ = zdiv_exact(num_, g);
    den_ = zdiv_exact(den_, g);
  }
  mpz_class c = gcd(content(num_), content(den_));
  if (den_.back() < 0) c = -c;
  for (auto& x : num_) x /= c;
  for (auto& x : den_) x /= c;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  return RationalFn(zadd(zmul(num_, o.den_), zmul(o.num_, den_)), zmul(den_, o.den_));
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  return RationalFn(zmul(num_, o.num_), zmul(den_, o.den_));
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
  require(!o.is_zero(), ErrorCode::BadShape, "division by zero rational function");
  return RationalFn(zmul(num_, o.den_), zmul(den_, o.num_));
}

Rational RationalFn::evaluate(const Rational& x) const {
  auto horner = [&](const ZPoly& a) {
    Rational acc = 0;
    for (std::size_t d = a.size(); d-- > 0;) acc = acc * x + Rational(a[d]);
    return acc;
  };
  Rational den = horner(den_);
  require(den != 0, ErrorCode::BadShape, "rational function has a pole there");
  Rational v = horner(num_) / den;
  v.canonicalize();
  return v;
}

std::string RationalFn::str() const {
  if (num_.empty()) return "0";
  std::string n = zpoly_str(num_);
  if (den_.size() == 1 && den_[0] == 1) return n;
  if (term_count(num_) > 1) n = "(" + n + ")";
  std::string d = zpoly_str(den_);
  if (term_count(den_) > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace crystalkit
