#pragma once

// Horizontality equations at a specialized point, compiled into an
// Artin-Schreier system, and their reduction to a Lie subspace.

#include <vector>

#include "crystalkit/artin_schreier.hpp"

namespace crystalkit {

struct ConnectionInput {
  Field field = nullptr;
  unsigned d_M = 0;
  unsigned d = 0;
  std::vector<int> eps;
  FMatrix a_bar;                          // d_M x d_M
  std::vector<std::vector<FVector>> da_bar;  // [j][i][l]
  FMatrix phi_images;                     // row i: image of e_i in the basis e
  FVector z_point;                        // length d

  // BadShape on dimensions, InconsistentInput unless a_bar * phi_images = 1.
  void validate() const;
};

// Variable x_{ijl} (1-based i, j, l) has 0-based index
// (l-1) d_M^2 + (i-1) d_M + (j-1).
unsigned connection_variable(unsigned d_M, unsigned i, unsigned j, unsigned l);

ASSystem compile_system(const ConnectionInput& inp);

struct LieBasis {
  unsigned dim = 0;
  std::vector<FMatrix> mats;
};

struct LieReduction {
  ASSystem reduced;             // dim variables per direction
  FMatrix recovery;             // x = recovery * y
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> residual_rows;  // equations checked after recovery

  FVector recover(const FVector& y) const;
  // The original equations outside the pivot set, evaluated at recover(y).
  bool residuals_vanish(const ASSystem& original, const FVector& y) const;
};

// x_{..l} is constrained to the span of the Lie matrices for each l.
// RankDeficientLie when the matrices are dependent, BadShape when dim = 0 or
// shapes differ from the system.
LieReduction reduce_by_lie_constraints(const ASSystem& sys, unsigned d_M, unsigned d,
                                       const LieBasis& lie);

// Membership of a solution of the full system in the Lie subspace.
bool in_lie_span(const FVector& x, unsigned d_M, unsigned d, const LieBasis& lie);

}  // namespace crystalkit
