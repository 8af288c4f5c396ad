#pragma once

// Artin-Schreier systems x = B x^[p] + C over finite fields.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "crystalkit/linalg.hpp"

namespace crystalkit {

struct ASSystem {
  Field field = nullptr;
  unsigned nvars = 0;
  FMatrix B;
  FVector C;

  // Throws BadShape on inconsistent dimensions or fields.
  void validate() const;
  bool operator==(const ASSystem& o) const {
    return field == o.field && nvars == o.nvars && B == o.B && C == o.C;
  }
};

ASSystem make_system(Field f, FMatrix B, FVector C);

struct SolutionSet {
  Field field = nullptr;
  std::optional<FVector> particular;
  std::vector<FVector> homogeneous;  // solutions of x = B x^[p], sorted
  std::vector<FVector> all;          // solutions of the system, sorted
  unsigned homogeneous_dim = 0;      // |homogeneous| = p^homogeneous_dim
};

// Degree-ext extension of f, built with the default modulus.
Field extension_field(Field f, unsigned ext);
SolutionSet solve_over(const ASSystem& sys, unsigned ext_degree);

// Canonical order on vectors: lexicographic, entries in field order.
bool vector_less(const FVector& a, const FVector& b);

struct GeometricCount {
  unsigned m = 0;
  mpz_class count;  // p^m
};
// m = rank of B B^[p] ... B^[p^{n-1}], the image dimension of the n-th
// iterate of x -> B x^[p].
GeometricCount geometric_count(const ASSystem& sys);

// True iff B^[1/p] is singular.
bool boundary_test(const ASSystem& sys);

struct Elimination {
  ASSystem reduced;
  unsigned eliminated = 0;   // 0-based index of the removed variable
  FVector coeffs;            // x_k = offset + sum_{i<k} coeffs[i] x_i
  FFElement offset;
  FVector recover(const FVector& y) const;
};
// Removes the first variable whose row of B^[1/p] depends on earlier rows.
Elimination eliminate_variable(const ASSystem& sys);

// Rows (w_i, w_i^{p^s}, w_i^{p^{2s}}, ...) for step s.
FMatrix moore_matrix(const std::vector<FFElement>& w, unsigned step = 1);
FFElement moore_determinant(const std::vector<FFElement>& w);

}  // namespace crystalkit
