#include "crystalkit/connection.hpp"

#include <algorithm>

#include "crystalkit/error.hpp"

namespace crystalkit {

namespace {

void check_matrix(const FMatrix& a, std::size_t rows, std::size_t cols, Field f, const char* what) {
  require(a.size() == rows, ErrorCode::BadShape, std::string(what) + " has the wrong number of rows");
  for (const auto& row : a) {
    require(row.size() == cols, ErrorCode::BadShape, std::string(what) + " has the wrong number of columns");
    for (const auto& e : row) require(e.field() == f, ErrorCode::IncompatibleFields, std::string(what) + " entry field");
  }
}

}  // namespace

void ConnectionInput::validate() const {
  require(field != nullptr, ErrorCode::BadShape, "connection input without a field");
  require(d_M >= 1 && d >= 1, ErrorCode::BadShape, "d_M and d must be positive");
  require(eps.size() == d_M, ErrorCode::BadShape, "eps must have length d_M");
  for (int e : eps) require(e == 0 || e == 1, ErrorCode::BadShape, "eps entries must be 0 or 1");
  check_matrix(a_bar, d_M, d_M, field, "a_bar");
  check_matrix(phi_images, d_M, d_M, field, "phi_images");
  require(da_bar.size() == d_M, ErrorCode::BadShape, "da_bar must be d_M x d_M x d");
  for (const auto& row : da_bar) check_matrix(row, d_M, d, field, "da_bar");
  require(z_point.size() == d, ErrorCode::BadShape, "z_point must have length d");
  for (const auto& e : z_point) require(e.field() == field, ErrorCode::IncompatibleFields, "z_point field");
  require(matmul(a_bar, phi_images) == identity_matrix(field, d_M), ErrorCode::InconsistentInput,
          "a_bar * phi_images is not the identity");
}

unsigned connection_variable(unsigned d_M, unsigned i, unsigned j, unsigned l) {
  return (l - 1) * d_M * d_M + (i - 1) * d_M + (j - 1);
}

ASSystem compile_system(const ConnectionInput& inp) {
  inp.validate();
  const Field f = inp.field;
  const unsigned D = inp.d_M;
  const unsigned n = D * D * inp.d;
  FMatrix B = zero_matrix(f, n, n);
  FVector C(n, FFElement::zero(f));
  const std::uint32_t p = f->p();
  for (unsigned l = 1; l <= inp.d; ++l) {
    const FFElement zl = inp.z_point[l - 1].pow(p - 1);
    for (unsigned i = 1; i <= D; ++i) {
      for (unsigned j = 1; j <= D; ++j) {
        const unsigned row = connection_variable(D, i, j, l);
        for (unsigned a = 1; a <= D; ++a) {
          if (inp.eps[a - 1] != 0) continue;
          for (unsigned b = 1; b <= D; ++b) {
            if (inp.eps[b - 1] != 1) continue;
            B[row][connection_variable(D, a, b, l)] +=
                inp.a_bar[j - 1][b - 1] * inp.phi_images[a - 1][i - 1] * zl;
          }
        }
        for (unsigned b = 1; b <= D; ++b) {
          C[row] += inp.phi_images[b - 1][i - 1] * inp.da_bar[j - 1][b - 1][l - 1];
        }
      }
    }
  }
  return make_system(f, std::move(B), std::move(C));
}

namespace {

// Block-diagonal d_M^2 d x dim d matrix whose l-th block has the flattened
// Lie matrices as columns.
FMatrix lie_recovery(Field f, unsigned D, unsigned d, const LieBasis& lie) {
  const unsigned k = lie.dim;
  FMatrix A = zero_matrix(f, D * D * d, k * d);
  for (unsigned l = 1; l <= d; ++l) {
    for (unsigned t = 0; t < k; ++t) {
      for (unsigned i = 1; i <= D; ++i) {
        for (unsigned j = 1; j <= D; ++j) {
          A[connection_variable(D, i, j, l)][(l - 1) * k + t] = embed(lie.mats[t][i - 1][j - 1], f);
        }
      }
    }
  }
  return A;
}

void check_lie(const LieBasis& lie, unsigned D) {
  require(lie.dim >= 1, ErrorCode::BadShape, "Lie basis must be nonempty");
  require(lie.mats.size() == lie.dim, ErrorCode::BadShape, "Lie basis size differs from dim");
  for (const auto& m : lie.mats) {
    require(m.size() == D, ErrorCode::BadShape, "Lie matrix must be d_M x d_M");
    for (const auto& row : m) require(row.size() == D, ErrorCode::BadShape, "Lie matrix must be d_M x d_M");
  }
}

}  // namespace

LieReduction reduce_by_lie_constraints(const ASSystem& sys, unsigned D, unsigned d,
                                       const LieBasis& lie) {
  sys.validate();
  check_lie(lie, D);
  require(d >= 1 && sys.nvars == D * D * d, ErrorCode::BadShape,
          "system does not have d_M^2 d variables");
  const Field f = sys.field;
  for (const auto& m : lie.mats) {
    for (const auto& row : m) {
      for (const auto& e : row) require(e.field() == f, ErrorCode::IncompatibleFields, "Lie matrix field");
    }
  }
  LieReduction out;
  out.recovery = lie_recovery(f, D, d, lie);
  const FMatrix& A = out.recovery;
  const unsigned k = lie.dim * d;
  out.pivot_rows = independent_rows(A);
  require(out.pivot_rows.size() == k, ErrorCode::RankDeficientLie, "Lie matrices are linearly dependent");
  for (std::size_t r = 0; r < sys.nvars; ++r) {
    if (!std::binary_search(out.pivot_rows.begin(), out.pivot_rows.end(), r)) out.residual_rows.push_back(r);
  }
  // A y = B A^[p] y^[p] + C restricted to the pivot rows.
  FMatrix Apiv, BApiv;
  FVector Cpiv;
  const FMatrix BA = matmul(sys.B, frobenius_twist(A, 1));
  for (std::size_t r : out.pivot_rows) {
    Apiv.push_back(A[r]);
    BApiv.push_back(BA[r]);
    Cpiv.push_back(sys.C[r]);
  }
  const auto inv = inverse(Apiv);
  require(inv.has_value(), ErrorCode::RankDeficientLie, "pivot block is singular");
  out.reduced = make_system(f, matmul(*inv, BApiv), matvec(*inv, Cpiv));
  return out;
}

FVector LieReduction::recover(const FVector& y) const {
  require(y.size() == reduced.nvars, ErrorCode::BadShape, "recover expects a reduced solution");
  if (y.empty()) return FVector(recovery.size(), FFElement::zero(reduced.field));
  const Field K = y[0].field();
  FVector x;
  for (const auto& row : recovery) {
    FFElement acc = FFElement::zero(K);
    for (std::size_t t = 0; t < row.size(); ++t) acc += embed(row[t], K) * y[t];
    x.push_back(acc);
  }
  return x;
}

bool LieReduction::residuals_vanish(const ASSystem& original, const FVector& y) const {
  const FVector x = recover(y);
  const Field K = x.empty() ? original.field : x[0].field();
  const FVector xp = frobenius_twist(x, 1);
  for (std::size_t r : residual_rows) {
    FFElement v = x[r] - embed(original.C[r], K);
    for (std::size_t c = 0; c < xp.size(); ++c) v -= embed(original.B[r][c], K) * xp[c];
    if (!v.is_zero()) return false;
  }
  return true;
}

bool in_lie_span(const FVector& x, unsigned D, unsigned d, const LieBasis& lie) {
  check_lie(lie, D);
  require(x.size() == D * D * d, ErrorCode::BadShape, "vector does not have d_M^2 d entries");
  if (x.empty()) return true;
  const Field K = x[0].field();
  const FMatrix A = lie_recovery(K, D, d, lie);
  const std::size_t base = rank(A);
  FMatrix aug = A;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(x[r]);
  return rank(aug) == base;
}

}  // namespace crystalkit
