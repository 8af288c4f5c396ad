#include <gtest/gtest.h>

#include <algorithm>

#include "crystalkit/artin_schreier.hpp"
#include "support.hpp"

using namespace crystalkit;
using ck_test::code_of;
using ck_test::random_matrix;
using ck_test::random_vector;

namespace {

// Every x in K^n with x = B x^[p] + C, by enumeration.
std::vector<FVector> brute_force(const ASSystem& sys, Field K) {
  const auto elems = all_elements(K);
  const unsigned n = sys.nvars;
  FMatrix B = sys.B;
  for (auto& row : B) {
    for (auto& e : row) e = embed(e, K);
  }
  FVector C;
  for (const auto& c : sys.C) C.push_back(embed(c, K));
  std::vector<FVector> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    FVector x;
    for (auto i : idx) x.push_back(elems[i]);
    FVector rhs = matvec(B, frobenius_twist(x, 1));
    bool ok = true;
    for (unsigned i = 0; i < n && ok; ++i) ok = x[i] == rhs[i] + C[i];
    if (ok) out.push_back(x);
    unsigned k = 0;
    while (k < n && ++idx[k] == elems.size()) idx[k++] = 0;
    if (k == n) break;
  }
  std::sort(out.begin(), out.end(), vector_less);
  return out;
}

bool fp_independent(const std::vector<FFElement>& w) {
  const std::uint32_t p = w[0].field()->p();
  std::size_t total = 1;
  for (std::size_t i = 0; i < w.size(); ++i) total *= p;
  for (std::size_t code = 1; code < total; ++code) {
    FFElement acc = FFElement::zero(w[0].field());
    std::size_t c = code;
    for (const auto& x : w) {
      acc += FFElement::from_int(w[0].field(), static_cast<long long>(c % p)) * x;
      c /= p;
    }
    if (acc.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST(SolveOver, MatchesEnumeration) {
  std::mt19937 rng(31);
  const std::tuple<std::uint32_t, unsigned, unsigned, unsigned> cases[] = {
      {2, 1, 1, 3}, {2, 1, 2, 2}, {2, 2, 1, 2}, {2, 2, 2, 2}, {3, 1, 1, 3}, {3, 1, 2, 2}, {3, 2, 1, 2},
  };
  for (const auto& [p, deg, ext, n] : cases) {
    Field f = make_field(p, deg);
    Field K = extension_field(f, ext);
    for (int t = 0; t < 15; ++t) {
      ASSystem sys = make_system(f, random_matrix(f, n, n, rng), random_vector(f, n, rng));
      SolutionSet s = solve_over(sys, ext);
      EXPECT_EQ(s.field, K);
      const auto expect = brute_force(sys, K);
      EXPECT_EQ(s.all, expect);
      EXPECT_EQ(s.particular.has_value(), !expect.empty());
      std::size_t hsize = 1;
      for (unsigned i = 0; i < s.homogeneous_dim; ++i) hsize *= p;
      EXPECT_EQ(s.homogeneous.size(), hsize);
      ASSERT_EQ(s.homogeneous, brute_force(make_system(f, sys.B, FVector(n, FFElement::zero(f))), K));
    }
  }
}

TEST(SolveOver, ZeroMatrixHasUniqueSolution) {
  std::mt19937 rng(32);
  Field f = make_field(3, 2);
  for (int t = 0; t < 10; ++t) {
    FVector c = random_vector(f, 3, rng);
    SolutionSet s = solve_over(make_system(f, zero_matrix(f, 3, 3), c), 1);
    ASSERT_EQ(s.all.size(), 1u);
    EXPECT_EQ(s.all[0], c);
    EXPECT_EQ(s.homogeneous_dim, 0u);
  }
}

TEST(SolveOver, SolutionsFormHomogeneousTorsor) {
  std::mt19937 rng(33);
  Field f = make_field(2, 2);
  for (int t = 0; t < 20; ++t) {
    ASSystem sys = make_system(f, random_matrix(f, 2, 2, rng), random_vector(f, 2, rng));
    SolutionSet s = solve_over(sys, 3);
    if (!s.particular) continue;
    EXPECT_EQ(s.all.size(), s.homogeneous.size());
    for (const auto& x : s.all) {
      FVector diff;
      for (std::size_t i = 0; i < x.size(); ++i) diff.push_back(x[i] - (*s.particular)[i]);
      EXPECT_TRUE(std::binary_search(s.homogeneous.begin(), s.homogeneous.end(), diff, vector_less));
    }
  }
}

TEST(SolveOver, EmptySystemAndBadExtension) {
  Field f = make_field(2, 1);
  SolutionSet s = solve_over(make_system(f, {}, {}), 1);
  EXPECT_EQ(s.all.size(), 1u);
  ASSystem sys = make_system(f, identity_matrix(f, 1), {FFElement::one(f)});
  EXPECT_EQ(code_of([&] { solve_over(sys, 0); }), ErrorCode::BadShape);
  // x = x^2 + 1 has no solution over F_2 but two over F_4.
  EXPECT_TRUE(solve_over(sys, 1).all.empty());
  EXPECT_EQ(solve_over(sys, 2).all.size(), 2u);
}

TEST(SolveOver, RejectsBadShapes) {
  Field f = make_field(2, 1), g = make_field(2, 2);
  EXPECT_EQ(code_of([&] { make_system(f, identity_matrix(f, 2), {FFElement::one(f)}); }), ErrorCode::BadShape);
  EXPECT_EQ(code_of([&] { make_system(f, identity_matrix(g, 1), {FFElement::one(f)}); }),
            ErrorCode::IncompatibleFields);
}

// The Galois action on the homogeneous solutions over the closure factors
// through GL_m(F_p) for m <= 2; extensions of degree 12 (p = 2) and 24 (p = 3)
// contain every solution.
TEST(GeometricCount, MatchesLargeExtension) {
  std::mt19937 rng(34);
  const std::tuple<std::uint32_t, unsigned, unsigned> cases[] = {{2, 1, 12}, {2, 2, 12}, {3, 1, 24}};
  for (const auto& [p, deg, ext] : cases) {
    Field f = make_field(p, deg);
    for (int t = 0; t < 12; ++t) {
      FMatrix B = random_matrix(f, 2, 2, rng);
      if (t % 3 == 0) {
        // Rank one matrices exercise the degenerate cases.
        FVector u = random_vector(f, 2, rng), v = random_vector(f, 2, rng);
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) B[i][j] = u[i] * v[j];
        }
      }
      ASSystem sys = make_system(f, B, random_vector(f, 2, rng));
      GeometricCount g = geometric_count(sys);
      SolutionSet s = solve_over(sys, ext);
      EXPECT_EQ(mpz_class(s.homogeneous.size()), g.count);
      EXPECT_EQ(mpz_class(s.all.size()), g.count);
    }
  }
}

TEST(GeometricCount, ProductOrderMatters) {
  // For B = u v^T the ranks of B B^[p] and B^[p] B are [v.u^[p] != 0] and
  // [v^[p].u != 0]; these are Frobenius conjugates over F_4 but can differ
  // over F_8. The solution count follows B B^[p].
  Field f = make_field(2, 3);
  const auto elems = all_elements(f);
  unsigned found = 0;
  for (const auto& u0 : elems) {
    for (const auto& u1 : elems) {
      for (const auto& v0 : elems) {
        for (const auto& v1 : elems) {
          FMatrix B{{u0 * v0, u0 * v1}, {u1 * v0, u1 * v1}};
          const auto left = rank(matmul(B, frobenius_twist(B, 1)));
          const auto right = rank(matmul(frobenius_twist(B, 1), B));
          if (left == right || found >= 8) continue;
          ++found;
          ASSystem sys = make_system(f, B, FVector(2, FFElement::zero(f)));
          EXPECT_EQ(geometric_count(sys).m, left);
          EXPECT_EQ(solve_over(sys, 2).homogeneous.size(), left ? 2u : 1u);
        }
      }
    }
  }
  EXPECT_EQ(found, 8u);
}

TEST(BoundaryTest, SingularIffRankDrops) {
  std::mt19937 rng(35);
  Field f = make_field(3, 2);
  for (int t = 0; t < 40; ++t) {
    FMatrix B = random_matrix(f, 2, 2, rng);
    if (t % 2) B[1] = B[0];
    ASSystem sys = make_system(f, B, random_vector(f, 2, rng));
    EXPECT_EQ(boundary_test(sys), determinant(B).is_zero());
  }
}

TEST(Elimination, SolutionsBiject) {
  std::mt19937 rng(36);
  const std::pair<std::uint32_t, unsigned> fields[] = {{2, 1}, {2, 2}, {3, 1}, {3, 2}};
  for (const auto& [p, deg] : fields) {
    Field f = make_field(p, deg);
    for (int t = 0; t < 20; ++t) {
      const unsigned n = 2 + t % 2;
      FMatrix B = random_matrix(f, n, n, rng);
      // Make row t % n a combination of earlier rows, or zero.
      const unsigned k = t % n;
      FVector row(n, FFElement::zero(f));
      for (unsigned i = 0; i < k; ++i) {
        FFElement c = ck_test::random_element(f, rng);
        for (unsigned j = 0; j < n; ++j) row[j] += c * B[i][j];
      }
      B[k] = row;
      ASSystem sys = make_system(f, B, random_vector(f, n, rng));
      ASSERT_TRUE(boundary_test(sys));
      Elimination el = eliminate_variable(sys);
      EXPECT_LE(el.eliminated, k);
      EXPECT_EQ(el.reduced.nvars, n - 1);
      for (unsigned ext : {1u, 2u}) {
        SolutionSet full = solve_over(sys, ext), red = solve_over(el.reduced, ext);
        std::vector<FVector> lifted;
        for (const auto& y : red.all) lifted.push_back(el.recover(y));
        std::sort(lifted.begin(), lifted.end(), vector_less);
        EXPECT_EQ(lifted, full.all);
      }
    }
  }
}

TEST(Elimination, RequiresSingularMatrix) {
  Field f = make_field(2, 2);
  ASSystem sys = make_system(f, identity_matrix(f, 2), FVector(2, FFElement::one(f)));
  EXPECT_EQ(code_of([&] { eliminate_variable(sys); }), ErrorCode::NotSingular);
  EXPECT_EQ(code_of([&] { eliminate_variable(make_system(f, {}, {})); }), ErrorCode::NotSingular);
  ASSystem sing = make_system(f, zero_matrix(f, 2, 2), FVector(2, FFElement::one(f)));
  EXPECT_EQ(code_of([&] { eliminate_variable(sing).recover({}); }), ErrorCode::BadShape);
}

TEST(Moore, DeterminantDetectsFpDependence) {
  std::mt19937 rng(37);
  for (const auto& [p, n] : {std::pair<std::uint32_t, unsigned>{2, 4}, {3, 3}}) {
    Field f = make_field(p, n);
    for (unsigned k = 1; k <= 3; ++k) {
      for (int t = 0; t < 60; ++t) {
        std::vector<FFElement> w;
        for (unsigned i = 0; i < k; ++i) w.push_back(ck_test::random_element(f, rng));
        EXPECT_EQ(!moore_determinant(w).is_zero(), fp_independent(w));
      }
    }
  }
  EXPECT_EQ(code_of([] { moore_matrix({}); }), ErrorCode::BadShape);
}
