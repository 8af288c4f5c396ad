#include "crystalkit/artin_schreier.hpp"

#include <algorithm>

namespace crystalkit {

void ASSystem::validate() const {
  require(field != nullptr, ErrorCode::BadShape, "system without a field");
  require(B.size() == nvars && C.size() == nvars, ErrorCode::BadShape, "system dimensions");
  for (const auto& row : B) {
    require(row.size() == nvars, ErrorCode::BadShape, "B must be square");
    for (const auto& e : row) require(e.field() == field, ErrorCode::IncompatibleFields, "B entry field");
  }
  for (const auto& e : C) require(e.field() == field, ErrorCode::IncompatibleFields, "C entry field");
}

ASSystem make_system(Field f, FMatrix B, FVector C) {
  ASSystem s{f, static_cast<unsigned>(C.size()), std::move(B), std::move(C)};
  s.validate();
  return s;
}

Field extension_field(Field f, unsigned ext) {
  require(ext >= 1, ErrorCode::BadShape, "extension degree must be >= 1");
  if (ext == 1) return f;
  return make_field(f->p(), f->degree() * ext);
}

bool vector_less(const FVector& a, const FVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SolutionSet solve_over(const ASSystem& sys, unsigned ext_degree) {
  sys.validate();
  Field K = extension_field(sys.field, ext_degree);
  const unsigned n = sys.nvars;
  const unsigned D = K->degree();
  const std::uint32_t p = K->p();
  SolutionSet out;
  out.field = K;
  if (n == 0) {
    out.particular = FVector{};
    out.homogeneous.push_back({});
    out.all.push_back({});
    return out;
  }
  // Unknown (i, k) is the coefficient of y^k in x_i; the map
  // x -> x - B x^[p] is F_p-linear in these coordinates.
  const auto frob = frobenius_matrix(K);
  FpMatrix L(p, n * D, n * D);
  for (unsigned j = 0; j < n; ++j) {
    for (unsigned i = 0; i < n; ++i) {
      FFElement b = embed(sys.B[j][i], K);
      if (b.is_zero()) continue;
      const auto mb = multiplication_matrix(b);
      for (unsigned r = 0; r < D; ++r) {
        for (unsigned k = 0; k < D; ++k) {
          std::uint64_t acc = 0;
          for (unsigned t = 0; t < D; ++t) acc += static_cast<std::uint64_t>(mb[r][t]) * frob[t][k];
          const Coeff v = static_cast<Coeff>(acc % p);
          Coeff& cell = L.at(j * D + r, i * D + k);
          cell = static_cast<Coeff>((cell + p - v) % p);
        }
      }
    }
    for (unsigned r = 0; r < D; ++r) {
      Coeff& cell = L.at(j * D + r, j * D + r);
      cell = static_cast<Coeff>((cell + 1) % p);
    }
  }
  std::vector<Coeff> rhs(n * D, 0);
  for (unsigned j = 0; j < n; ++j) {
    FFElement c = embed(sys.C[j], K);
    for (unsigned r = 0; r < D; ++r) rhs[j * D + r] = c.coeffs()[r];
  }
  FpSolution sol = solve(L, rhs);
  auto to_vector = [&](const std::vector<Coeff>& flat) {
    FVector v;
    for (unsigned i = 0; i < n; ++i) {
      v.emplace_back(K, std::vector<Coeff>(flat.begin() + i * D, flat.begin() + (i + 1) * D));
    }
    return v;
  };
  out.homogeneous_dim = static_cast<unsigned>(sol.kernel.size());
  // Enumerate the F_p-span of the kernel basis; its size is p^dim <= p^n.
  std::vector<std::vector<Coeff>> span{std::vector<Coeff>(n * D, 0)};
  for (const auto& kv : sol.kernel) {
    std::vector<std::vector<Coeff>> next;
    next.reserve(span.size() * p);
    for (const auto& base : span) {
      for (std::uint32_t c = 0; c < p; ++c) {
        std::vector<Coeff> v = base;
        for (std::size_t t = 0; t < v.size(); ++t) {
          v[t] = static_cast<Coeff>((v[t] + static_cast<std::uint64_t>(c) * kv[t]) % p);
        }
        next.push_back(std::move(v));
      }
    }
    span = std::move(next);
  }
  for (const auto& h : span) out.homogeneous.push_back(to_vector(h));
  std::sort(out.homogeneous.begin(), out.homogeneous.end(), vector_less);
  if (sol.particular) {
    FVector part = to_vector(*sol.particular);
    for (const auto& h : out.homogeneous) {
      FVector s(n, FFElement::zero(K));
      for (unsigned i = 0; i < n; ++i) s[i] = part[i] + h[i];
      out.all.push_back(std::move(s));
    }
    std::sort(out.all.begin(), out.all.end(), vector_less);
    out.particular = out.all.front();
  }
  return out;
}

GeometricCount geometric_count(const ASSystem& sys) {
  sys.validate();
  GeometricCount g;
  const unsigned n = sys.nvars;
  if (n > 0) {
    FMatrix prod = sys.B;
    for (unsigned k = 1; k < n; ++k) prod = matmul(prod, frobenius_twist(sys.B, k));
    g.m = static_cast<unsigned>(rank(prod));
  }
  mpz_ui_pow_ui(g.count.get_mpz_t(), sys.field->p(), g.m);
  return g;
}

bool boundary_test(const ASSystem& sys) {
  sys.validate();
  if (sys.nvars == 0) return false;
  return rank(frobenius_twist(sys.B, -1)) < sys.nvars;
}

FVector Elimination::recover(const FVector& y) const {
  require(y.size() == reduced.nvars, ErrorCode::BadShape,
          "recover expects a reduced solution");
  FVector x;
  Field K = y.empty() ? offset.field() : y[0].field();
  FFElement xk = embed(offset, K);
  for (unsigned i = 0; i < eliminated; ++i) xk += embed(coeffs[i], K) * y[i];
  for (unsigned i = 0; i < eliminated; ++i) x.push_back(y[i]);
  x.push_back(xk);
  for (unsigned i = eliminated; i < y.size(); ++i) x.push_back(y[i]);
  return x;
}

Elimination eliminate_variable(const ASSystem& sys) {
  sys.validate();
  const unsigned n = sys.nvars;
  require(n > 0, ErrorCode::NotSingular, "no variables to eliminate");
  Field f = sys.field;
  FMatrix B1 = frobenius_twist(sys.B, -1);
  // Find the first row of B1 lying in the span of the rows before it; those
  // earlier rows are then independent and the coefficients unique.
  std::optional<unsigned> dep;
  std::vector<FFElement> d;
  for (unsigned k = 0; k < n && !dep; ++k) {
    if (k == 0) {
      if (std::all_of(B1[0].begin(), B1[0].end(), [](const FFElement& e) { return e.is_zero(); })) dep = 0;
      continue;
    }
    // Solve sum_{i<k} d_i B1[i] = B1[k]: augmented system with rows = columns of B1.
    FMatrix aug = zero_matrix(f, n, k + 1);
    for (unsigned c = 0; c < n; ++c) {
      for (unsigned i = 0; i < k; ++i) aug[c][i] = B1[i][c];
      aug[c][k] = B1[k][c];
    }
    FMatrix lhs = zero_matrix(f, n, k);
    for (unsigned c = 0; c < n; ++c) {
      for (unsigned i = 0; i < k; ++i) lhs[c][i] = aug[c][i];
    }
    if (rank(aug) != rank(lhs)) continue;
    // Independent earlier rows: pick k independent equations and invert.
    auto rows = independent_rows(lhs);
    FMatrix sq = zero_matrix(f, k, k);
    FVector rhs;
    for (unsigned t = 0; t < k; ++t) {
      sq[t] = lhs[rows[t]];
      rhs.push_back(aug[rows[t]][k]);
    }
    d = matvec(*inverse(sq), rhs);
    dep = k;
  }
  require(dep.has_value(), ErrorCode::NotSingular, "B^[1/p] is invertible");
  const unsigned k = *dep;
  Elimination out;
  out.eliminated = k;
  // x_k = c_k - sum d_i^p c_i + sum d_i^p x_i
  FFElement ck = sys.C[k];
  for (unsigned i = 0; i < k; ++i) {
    FFElement dp = frobenius(d[i], 1);
    out.coeffs.push_back(dp);
    ck -= dp * sys.C[i];
  }
  out.offset = ck;
  const FFElement ck_p = frobenius(ck, 1);
  ASSystem red;
  red.field = f;
  red.nvars = n - 1;
  for (unsigned j = 0; j < n; ++j) {
    if (j == k) continue;
    FVector row;
    for (unsigned i = 0; i < n; ++i) {
      if (i == k) continue;
      FFElement b = sys.B[j][i];
      if (i < k) b += sys.B[j][k] * frobenius(out.coeffs[i], 1);
      row.push_back(b);
    }
    red.B.push_back(std::move(row));
    red.C.push_back(sys.C[j] + sys.B[j][k] * ck_p);
  }
  out.reduced = std::move(red);
  return out;
}

FMatrix moore_matrix(const std::vector<FFElement>& w, unsigned step) {
  require(!w.empty(), ErrorCode::BadShape, "empty Moore matrix");
  FMatrix m;
  for (const auto& x : w) {
    FVector row;
    FFElement cur = x;
    for (std::size_t j = 0; j < w.size(); ++j) {
      row.push_back(cur);
      cur = frobenius(cur, step);
    }
    m.push_back(std::move(row));
  }
  return m;
}

FFElement moore_determinant(const std::vector<FFElement>& w) { return determinant(moore_matrix(w, 1)); }

}  // namespace crystalkit
