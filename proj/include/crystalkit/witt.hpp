#pragma once

// Truncated p-typical Witt vectors W_m(F_{p^n}).

#include <gmpxx.h>

#include <map>
#include <vector>

#include "crystalkit/field.hpp"

namespace crystalkit {

// Integer polynomial; variable 2j is x_j and 2j+1 is y_j.
class IntPoly {
 public:
  // Sorted (var << 24 | exponent) factors.
  using Monomial = std::vector<std::uint32_t>;

  static IntPoly constant(long v);
  static IntPoly variable(std::uint32_t var);

  const std::map<Monomial, mpz_class>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly scaled(const mpz_class& c) const;
  IntPoly pow(unsigned e) const;
  // Exact division; throws if some coefficient is not divisible.
  IntPoly divided(const mpz_class& c) const;
  bool operator==(const IntPoly& o) const { return terms_ == o.terms_; }

 private:
  void add_term(const Monomial& m, const mpz_class& c);
  std::map<Monomial, mpz_class> terms_;
};

inline std::uint32_t witt_x(unsigned j) { return 2 * j; }
inline std::uint32_t witt_y(unsigned j) { return 2 * j + 1; }

// Ghost component w_k = sum_{j<=k} p^j v_j^{p^{k-j}} for v = x or y.
IntPoly ghost_polynomial(std::uint32_t p, unsigned k, bool y_side);

class WittStructure {
 public:
  std::uint32_t p() const { return p_; }
  unsigned m() const { return m_; }
  const std::vector<IntPoly>& sum_polys() const { return sum_; }
  const std::vector<IntPoly>& prod_polys() const { return prod_; }

  struct Compiled {
    struct Term {
      Coeff coeff;
      std::vector<std::uint32_t> slots;
    };
    std::vector<std::vector<Term>> comps;          // one term list per S_k or P_k
    std::vector<std::pair<std::uint32_t, std::uint32_t>> slot_powers;  // (var, exp)
  };
  const Compiled& sum_plan() const { return sum_plan_; }
  const Compiled& prod_plan() const { return prod_plan_; }

 private:
  friend const WittStructure& witt_structure(std::uint32_t, unsigned);
  WittStructure(std::uint32_t p, unsigned m, std::vector<IntPoly> s, std::vector<IntPoly> pr);

  std::uint32_t p_;
  unsigned m_;
  std::vector<IntPoly> sum_, prod_;
  Compiled sum_plan_, prod_plan_;
};

// Cached per (p, m); m above the precision cap raises PrecisionLimit.
const WittStructure& witt_structure(std::uint32_t p, unsigned m);
void set_witt_precision_cap(unsigned cap);
unsigned witt_precision_cap();

class WittVector {
 public:
  WittVector() = default;
  WittVector(Field f, unsigned m);  // zero
  WittVector(Field f, std::vector<FFElement> comps);

  static WittVector zero(Field f, unsigned m) { return WittVector(f, m); }
  static WittVector one(Field f, unsigned m);
  static WittVector from_integer(Field f, unsigned m, long long v);

  Field field() const { return f_; }
  unsigned precision() const { return static_cast<unsigned>(c_.size()); }
  const std::vector<FFElement>& comps() const { return c_; }
  const FFElement& operator[](std::size_t i) const { return c_[i]; }
  const WittStructure& structure() const { return *s_; }

  bool is_zero() const;
  bool is_unit() const { return !c_[0].is_zero(); }
  // Index of the first nonzero component, precision() for zero.
  unsigned valuation() const;

  WittVector operator+(const WittVector& o) const;
  WittVector operator-(const WittVector& o) const;
  WittVector operator-() const;
  WittVector operator*(const WittVector& o) const;
  WittVector& operator+=(const WittVector& o) { return *this = *this + o; }
  WittVector& operator-=(const WittVector& o) { return *this = *this - o; }
  WittVector& operator*=(const WittVector& o) { return *this = *this * o; }
  bool operator==(const WittVector& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const WittVector& o) const { return !(*this == o); }
  bool operator<(const WittVector& o) const;

  // "c0,c1|c0,c1|..." one field element per component.
  std::string str() const;

 private:
  void check_same(const WittVector& o) const;
  const WittStructure* s_ = nullptr;
  Field f_ = nullptr;
  std::vector<FFElement> c_;
};

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
// Componentwise x -> x^{p^t}.
WittVector sigma(const WittVector& a, long long t = 1);
WittVector verschiebung(const WittVector& a);
WittVector teichmuller(const FFElement& x, unsigned m);
// p * a computed as V(sigma(a)).
WittVector times_p(const WittVector& a);
// a = p*y with the top component of y set to zero; a must be divisible by p.
WittVector divide_by_p(const WittVector& a);
// Unit inverse by Newton iteration from the Teichmuller lift.
WittVector witt_inverse(const WittVector& a);
// Truncation to a lower precision.
WittVector truncate(const WittVector& a, unsigned m);
WittVector parse_witt(Field f, unsigned m, const std::string& text);

}  // namespace crystalkit
