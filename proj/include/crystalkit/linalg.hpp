#pragma once

// Dense linear algebra over F_p and over F_{p^n}.

#include <optional>
#include <vector>

#include "crystalkit/field.hpp"

namespace crystalkit {

class FpMatrix {
 public:
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Coeff at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

 private:
  std::uint32_t p_;
  std::size_t rows_, cols_;
  std::vector<Coeff> a_;
};

struct FpSolution {
  std::optional<std::vector<Coeff>> particular;
  std::vector<std::vector<Coeff>> kernel;  // basis of {x : A x = 0}
};

std::size_t rank(FpMatrix a);
// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(FpMatrix& a);
FpSolution solve(const FpMatrix& a, const std::vector<Coeff>& b);

using FMatrix = std::vector<std::vector<FFElement>>;
using FVector = std::vector<FFElement>;

FMatrix zero_matrix(Field f, std::size_t rows, std::size_t cols);
FMatrix identity_matrix(Field f, std::size_t n);
FMatrix matmul(const FMatrix& a, const FMatrix& b);
FVector matvec(const FMatrix& a, const FVector& x);
// Entrywise x -> x^{p^t}.
FMatrix frobenius_twist(const FMatrix& a, long long t);
FVector frobenius_twist(const FVector& v, long long t);
std::size_t rank(FMatrix a);
FFElement determinant(FMatrix a);
std::optional<FMatrix> inverse(FMatrix a);
// Row indices of the first maximal set of linearly independent rows.
std::vector<std::size_t> independent_rows(const FMatrix& a);

}  // namespace crystalkit
