#include "crystalkit/linalg.hpp"

#include <utility>

#include "poly_fp.hpp"

namespace crystalkit {

std::vector<std::size_t> rref(FpMatrix& a) {
  const auto p = a.p();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
    }
    const Coeff inv = detail::invp(a.at(row, col), p);
    for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = detail::mulp(a.at(row, j), inv, p);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      const Coeff c = a.at(i, col);
      if (c == 0) continue;
      const Coeff neg = p - c;
      for (std::size_t j = col; j < a.cols(); ++j) {
        const Coeff v = a.at(row, j);
        if (v) a.at(i, j) = static_cast<Coeff>((a.at(i, j) + static_cast<std::uint64_t>(neg) * v) % p);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(FpMatrix a) { return rref(a).size(); }

FpSolution solve(const FpMatrix& a, const std::vector<Coeff>& b) {
  const std::size_t n = a.cols();
  FpMatrix aug(a.p(), a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n) = b[i] % a.p();
  }
  auto pivots = rref(aug);
  FpSolution out;
  std::vector<bool> is_pivot(n + 1, false);
  for (auto c : pivots) is_pivot[c] = true;
  if (!is_pivot[n]) {
    std::vector<Coeff> x(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, n);
    out.particular = std::move(x);
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Coeff> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] == n) break;
      const Coeff c = aug.at(r, free);
      v[pivots[r]] = c ? a.p() - c : 0;
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

FMatrix zero_matrix(Field f, std::size_t rows, std::size_t cols) {
  return FMatrix(rows, FVector(cols, FFElement::zero(f)));
}

FMatrix identity_matrix(Field f, std::size_t n) {
  FMatrix m = zero_matrix(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = FFElement::one(f);
  return m;
}

FMatrix matmul(const FMatrix& a, const FMatrix& b) {
  require(!a.empty() && !b.empty() && a[0].size() == b.size(), ErrorCode::BadShape,
          "matrix shapes do not compose");
  Field f = a[0][0].field();
  FMatrix c = zero_matrix(f, a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

FVector matvec(const FMatrix& a, const FVector& x) {
  require(!a.empty() && a[0].size() == x.size(), ErrorCode::BadShape, "matrix-vector shape");
  FVector y(a.size(), FFElement::zero(x[0].field()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!a[i][j].is_zero()) y[i] += a[i][j] * x[j];
    }
  }
  return y;
}

FMatrix frobenius_twist(const FMatrix& a, long long t) {
  FMatrix out = a;
  for (auto& row : out) {
    for (auto& e : row) e = frobenius(e, t);
  }
  return out;
}

FVector frobenius_twist(const FVector& v, long long t) {
  FVector out = v;
  for (auto& e : out) e = frobenius(e, t);
  return out;
}

namespace {

// Gaussian elimination; returns rank, tracks determinant when square.
std::size_t eliminate(FMatrix& a, FFElement* det) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      if (det) *det = -*det;
    }
    FFElement inv = a[r][c].inverse();
    if (det) *det *= a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      FFElement factor = a[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(FMatrix a) { return eliminate(a, nullptr); }

FFElement determinant(FMatrix a) {
  require(!a.empty() && a.size() == a[0].size(), ErrorCode::BadShape, "determinant of non-square");
  FFElement det = FFElement::one(a[0][0].field());
  if (eliminate(a, &det) < a.size()) return FFElement::zero(a[0][0].field());
  return det;
}

std::optional<FMatrix> inverse(FMatrix a) {
  const std::size_t n = a.size();
  require(n > 0 && a[0].size() == n, ErrorCode::BadShape, "inverse of non-square");
  Field f = a[0][0].field();
  FMatrix inv = identity_matrix(f, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    FFElement s = a[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      FFElement factor = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= factor * a[c][j];
        inv[i][j] -= factor * inv[c][j];
      }
    }
  }
  return inv;
}

std::vector<std::size_t> independent_rows(const FMatrix& a) {
  std::vector<std::size_t> picked;
  FMatrix basis;
  for (std::size_t i = 0; i < a.size(); ++i) {
    FMatrix trial = basis;
    trial.push_back(a[i]);
    if (rank(trial) == trial.size()) {
      basis = std::move(trial);
      picked.push_back(i);
    }
  }
  return picked;
}

}  // namespace crystalkit
