#pragma once

// Finite fields F_{p^n} = F_p[x]/(f) with f monic irreducible.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crystalkit/error.hpp"

namespace crystalkit {

using Coeff = std::uint32_t;

bool is_prime(std::uint64_t n);

// Monic polynomial given low-to-high, leading 1 included.
bool is_irreducible(const std::vector<Coeff>& monic, std::uint32_t p);

class FieldDesc {
 public:
  std::uint32_t p() const { return p_; }
  unsigned degree() const { return n_; }
  // Low-to-high coefficients of the modulus, length degree()+1.
  const std::vector<Coeff>& modulus() const { return modulus_; }
  // p^degree, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> order() const;
  std::string describe() const;

  // Column k holds the coefficients of x^{kp}.
  const std::vector<std::vector<Coeff>>& frobenius_columns() const { return frob_; }

 private:
  friend const FieldDesc* make_field(std::uint32_t, unsigned,
                                     std::optional<std::vector<Coeff>>);
  FieldDesc(std::uint32_t p, std::vector<Coeff> modulus);

  std::uint32_t p_;
  unsigned n_;
  std::vector<Coeff> modulus_;
  std::vector<std::vector<Coeff>> frob_;
};

// Fields are interned: equal (p, modulus) gives the same pointer for the
// lifetime of the process.
using Field = const FieldDesc*;

// Without a modulus, the smallest irreducible monic one is used, ordering
// candidates by the integer sum c_i p^i over the non-leading coefficients.
Field make_field(std::uint32_t p, unsigned n,
                 std::optional<std::vector<Coeff>> modulus = std::nullopt);

class FFElement {
 public:
  FFElement() = default;
  explicit FFElement(Field f);
  FFElement(Field f, std::vector<Coeff> coeffs);

  static FFElement zero(Field f) { return FFElement(f); }
  static FFElement one(Field f);
  static FFElement from_int(Field f, long long v);
  static FFElement generator(Field f);
  // Inverse of index(): digit i of idx in base p is the coefficient of x^i.
  static FFElement from_index(Field f, std::uint64_t idx);

  Field field() const { return f_; }
  const std::vector<Coeff>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint64_t index() const;

  FFElement operator+(const FFElement& o) const;
  FFElement operator-(const FFElement& o) const;
  FFElement operator-() const;
  FFElement operator*(const FFElement& o) const;
  FFElement operator/(const FFElement& o) const;
  FFElement& operator+=(const FFElement& o) { return *this = *this + o; }
  FFElement& operator-=(const FFElement& o) { return *this = *this - o; }
  FFElement& operator*=(const FFElement& o) { return *this = *this * o; }

  FFElement inverse() const;
  FFElement pow(std::uint64_t e) const;
  FFElement scaled(Coeff s) const;

  bool operator==(const FFElement& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const FFElement& o) const { return !(*this == o); }
  // Canonical order: compare coefficients from x^{n-1} down to x^0.
  bool operator<(const FFElement& o) const;

  // "c0,c1,...,c_{n-1}"
  std::string str() const;

 private:
  void check_same(const FFElement& o) const;
  Field f_ = nullptr;
  std::vector<Coeff> c_;
};

FFElement parse_element(Field f, const std::string& text);

// x^{p^t}; negative t applies inverse Frobenius.
FFElement frobenius(const FFElement& x, long long t);

// Image under the fixed embedding that sends the generator of x's field to
// the canonically smallest root of its modulus in the superfield.
FFElement embed(const FFElement& x, Field super);

// Every element in canonical order; only for fields with order <= 2^24.
std::vector<FFElement> all_elements(Field f);

// Absolute trace to F_p.
Coeff trace(const FFElement& x);

// F_p-matrix (row-major, degree x degree) of y -> x*y in the power basis.
std::vector<std::vector<Coeff>> multiplication_matrix(const FFElement& x);

// F_p-matrix of y -> y^p.
std::vector<std::vector<Coeff>> frobenius_matrix(Field f);

}  // namespace crystalkit
