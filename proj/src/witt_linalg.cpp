#include "crystalkit/witt_linalg.hpp"

#include <algorithm>

namespace crystalkit {

WMatrix wzero(Field f, unsigned m, std::size_t rows, std::size_t cols) {
  return WMatrix(rows, WVector(cols, WittVector::zero(f, m)));
}

WMatrix widentity(Field f, unsigned m, std::size_t n) {
  WMatrix a = wzero(f, m, n, n);
  for (std::size_t i = 0; i < n; ++i) a[i][i] = WittVector::one(f, m);
  return a;
}

WMatrix wmatmul(const WMatrix& a, const WMatrix& b) {
  require(!a.empty() && !b.empty() && a[0].size() == b.size(), ErrorCode::BadShape,
          "matrix shapes do not compose");
  const WittVector& z = a[0][0];
  WMatrix c = wzero(z.field(), z.precision(), a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) {
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

WMatrix wsub(const WMatrix& a, const WMatrix& b) {
  WMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] = a[i][j] - b[i][j];
  }
  return c;
}

WVector wmatvec(const WMatrix& a, const WVector& x) {
  WVector y(a.size(), WittVector::zero(x[0].field(), x[0].precision()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!a[i][j].is_zero() && !x[j].is_zero()) y[i] += a[i][j] * x[j];
    }
  }
  return y;
}

WMatrix wsigma(const WMatrix& a, long long t) {
  WMatrix c = a;
  for (auto& row : c) {
    for (auto& e : row) e = sigma(e, t);
  }
  return c;
}

FMatrix reduce_mod_p(const WMatrix& a) {
  FMatrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& e : a[i]) c[i].push_back(e[0]);
  }
  return c;
}

WMatrix teichmuller_lift(const FMatrix& a, unsigned m) {
  WMatrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& e : a[i]) c[i].push_back(teichmuller(e, m));
  }
  return c;
}

namespace {

// x / (p^v u) for an entry x of valuation >= v; exact modulo p^{m-v}, which
// is all elimination needs since the quotient multiplies a valuation-v row.
WittVector divide_by_pivot(const WittVector& x, unsigned v, const WittVector& unit_inv) {
  WittVector q = x;
  for (unsigned i = 0; i < v; ++i) q = divide_by_p(q);
  return q * unit_inv;
}

}  // namespace

std::vector<unsigned> elementary_divisor_exponents(WMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  const unsigned m = rows && cols ? a[0][0].precision() : 0;
  std::vector<unsigned> exps;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    unsigned best = m;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        unsigned v = a[i][j].valuation();
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == m) break;
    std::swap(a[t], a[bi]);
    for (auto& row : a) std::swap(row[t], row[bj]);
    exps.push_back(best);
    WittVector u = a[t][t];
    for (unsigned i = 0; i < best; ++i) u = divide_by_p(u);
    // u is determined modulo p^{m-best}; any lift is a unit.
    WittVector uinv = witt_inverse(u);
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a[i][t].is_zero()) continue;
      WittVector factor = divide_by_pivot(a[i][t], best, uinv);
      for (std::size_t j = t; j < cols; ++j) a[i][j] -= factor * a[t][j];
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a[t][j].is_zero()) continue;
      WittVector factor = divide_by_pivot(a[t][j], best, uinv);
      for (std::size_t i = t; i < rows; ++i) a[i][j] -= factor * a[i][t];
    }
  }
  for (; t < std::min(rows, cols); ++t) exps.push_back(m);
  return exps;
}

std::optional<WMatrix> winverse(const WMatrix& a) {
  const std::size_t n = a.size();
  require(n > 0 && a[0].size() == n, ErrorCode::BadShape, "inverse of non-square");
  const unsigned m = a[0][0].precision();
  Field f = a[0][0].field();
  auto inv0 = inverse(reduce_mod_p(a));
  if (!inv0) return std::nullopt;
  WMatrix x = teichmuller_lift(*inv0, m);
  WMatrix two = widentity(f, m, n);
  for (std::size_t i = 0; i < n; ++i) two[i][i] = WittVector::from_integer(f, m, 2);
  for (unsigned prec = 1; prec < m; prec *= 2) x = wmatmul(x, wsub(two, wmatmul(a, x)));
  require(wmatmul(a, x) == widentity(f, m, n), ErrorCode::OracleMismatch,
          "Hensel lifting of the inverse failed");
  return x;
}

}  // namespace crystalkit
