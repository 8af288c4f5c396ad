#include <gtest/gtest.h>

#include "crystalkit/witt.hpp"
#include "crystalkit/witt_linalg.hpp"
#include "support.hpp"

using namespace crystalkit;
using ck_test::random_element;
using ck_test::random_witt;

namespace {

mpz_class ipow(const mpz_class& b, unsigned e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Integer value of a polynomial at x_j = xs[j], y_j = ys[j].
mpz_class evaluate(const IntPoly& f, const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys) {
  mpz_class acc = 0;
  for (const auto& [mono, c] : f.terms()) {
    mpz_class t = c;
    for (std::uint32_t fac : mono) {
      const std::uint32_t var = fac >> 24, e = fac & 0xffffff;
      const mpz_class& base = var % 2 == 0 ? xs[var / 2] : ys[var / 2];
      t *= ipow(base, e);
    }
    acc += t;
  }
  return acc;
}

mpz_class ghost(std::uint32_t p, unsigned k, const std::vector<mpz_class>& v) {
  mpz_class acc = 0;
  for (unsigned j = 0; j <= k; ++j) acc += ipow(p, j) * ipow(v[j], static_cast<unsigned>(ipow(p, k - j).get_ui()));
  return acc;
}

// W_m(F_p) = Z/p^m with (a_0,...) -> sum p^i [a_i], [x] = x^{p^{m-1}}.
mpz_class to_integer(const WittVector& a) {
  const std::uint32_t p = a.field()->p();
  const unsigned m = a.precision();
  const mpz_class mod = ipow(p, m);
  mpz_class acc = 0;
  for (unsigned i = 0; i < m; ++i) {
    mpz_class t;
    const mpz_class base = a[i].coeffs()[0];
    const mpz_class e = ipow(p, m - 1);
    mpz_powm(t.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    acc += ipow(p, i) * t;
  }
  return ((acc % mod) + mod) % mod;
}

}  // namespace

TEST(WittStructure, GhostIdentitiesOnIntegers) {
  std::mt19937 rng(3);
  for (std::uint32_t p : {2u, 3u}) {
    for (unsigned m = 1; m <= 4; ++m) {
      const auto& ws = witt_structure(p, m);
      ASSERT_EQ(ws.sum_polys().size(), m);
      for (int t = 0; t < 20; ++t) {
        std::vector<mpz_class> xs, ys;
        for (unsigned j = 0; j < m; ++j) {
          xs.push_back(static_cast<long>(rng() % 7) - 3);
          ys.push_back(static_cast<long>(rng() % 7) - 3);
        }
        std::vector<mpz_class> s, pr;
        for (unsigned k = 0; k < m; ++k) {
          s.push_back(evaluate(ws.sum_polys()[k], xs, ys));
          pr.push_back(evaluate(ws.prod_polys()[k], xs, ys));
        }
        for (unsigned k = 0; k < m; ++k) {
          EXPECT_EQ(ghost(p, k, s), ghost(p, k, xs) + ghost(p, k, ys));
          EXPECT_EQ(ghost(p, k, pr), ghost(p, k, xs) * ghost(p, k, ys));
        }
      }
    }
  }
}

TEST(WittStructure, KnownFirstPolynomial) {
  // S_1 = x_1 + y_1 - sum_{0<i<p} binom(p,i)/p x_0^i y_0^{p-i}; for p = 2: x_1 + y_1 - x_0 y_0.
  const auto& ws = witt_structure(2, 2);
  IntPoly expect = IntPoly::variable(witt_x(1)) + IntPoly::variable(witt_y(1)) -
                   IntPoly::variable(witt_x(0)) * IntPoly::variable(witt_y(0));
  EXPECT_EQ(ws.sum_polys()[1], expect);
}

TEST(WittVector, MatchesIntegersModPm) {
  std::mt19937 rng(4);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Field f = make_field(p, 1);
    for (unsigned m = 1; m <= 4; ++m) {
      const mpz_class mod = ipow(p, m);
      for (int t = 0; t < 200; ++t) {
        WittVector a = random_witt(f, m, rng), b = random_witt(f, m, rng);
        const mpz_class A = to_integer(a), B = to_integer(b);
        EXPECT_EQ(to_integer(a + b), (A + B) % mod);
        EXPECT_EQ(to_integer(a * b), (A * B) % mod);
        EXPECT_EQ(to_integer(-a), (mod - A) % mod);
        EXPECT_EQ(to_integer(times_p(a)), (A * p) % mod);
      }
      for (long v = -10; v <= 10; ++v) {
        EXPECT_EQ(to_integer(WittVector::from_integer(f, m, v)), ((mpz_class(v) % mod) + mod) % mod);
      }
    }
  }
}

TEST(WittVector, SmallFacts) {
  Field f = make_field(2, 1);
  WittVector one = WittVector::one(f, 2);
  EXPECT_EQ((one + one).str(), "0|1");
  EXPECT_EQ(parse_witt(f, 2, "0|1"), one + one);
  EXPECT_EQ((one + one).valuation(), 1u);
  EXPECT_TRUE(WittVector::zero(f, 3).is_zero());
  EXPECT_EQ(WittVector::zero(f, 3).valuation(), 3u);
}

class WittAxioms : public ::testing::TestWithParam<std::tuple<std::uint32_t, unsigned, unsigned>> {};

TEST_P(WittAxioms, RandomSamples) {
  const auto [p, n, m] = GetParam();
  Field f = make_field(p, n);
  std::mt19937 rng(100 * p + 10 * n + m);
  const WittVector zero = WittVector::zero(f, m), one = WittVector::one(f, m);
  const WittVector pv = WittVector::from_integer(f, m, p);
  for (int t = 0; t < 500; ++t) {
    WittVector a = random_witt(f, m, rng), b = random_witt(f, m, rng), c = random_witt(f, m, rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a + zero, a);
    ASSERT_EQ(a * one, a);
    ASSERT_EQ(a + (-a), zero);
    ASSERT_EQ(a - b + b, a);
    // F o V = V o F = p
    ASSERT_EQ(sigma(verschiebung(a), 1), pv * a);
    ASSERT_EQ(verschiebung(sigma(a, 1)), pv * a);
    ASSERT_EQ(times_p(a), pv * a);
    // sigma is a ring endomorphism congruent to x -> x^p modulo V
    ASSERT_EQ(sigma(a + b, 1), sigma(a, 1) + sigma(b, 1));
    ASSERT_EQ(sigma(a * b, 1), sigma(a, 1) * sigma(b, 1));
    WittVector ap = one;
    for (std::uint32_t k = 0; k < p; ++k) ap = ap * a;
    ASSERT_TRUE((sigma(a, 1) - ap)[0].is_zero());
    // Teichmuller multiplicativity
    FFElement x = random_element(f, rng), y = random_element(f, rng);
    ASSERT_EQ(teichmuller(x * y, m), teichmuller(x, m) * teichmuller(y, m));
    if (a.is_unit()) ASSERT_EQ(a * witt_inverse(a), one);
    if (m >= 2) {
      std::vector<FFElement> top = a.comps();
      top.back() = FFElement::zero(f);
      ASSERT_EQ(divide_by_p(times_p(a)), WittVector(f, top));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Rings, WittAxioms,
                         ::testing::Values(std::make_tuple(2u, 1u, 1u), std::make_tuple(2u, 1u, 4u),
                                           std::make_tuple(2u, 2u, 3u), std::make_tuple(2u, 3u, 4u),
                                           std::make_tuple(3u, 1u, 4u), std::make_tuple(3u, 2u, 2u),
                                           std::make_tuple(3u, 2u, 4u)));

TEST(WittVector, Errors) {
  Field f = make_field(3, 1), g = make_field(3, 2);
  try {
    (void)(WittVector::one(f, 2) + WittVector::one(f, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MismatchedStructure);
  }
  EXPECT_THROW((void)(WittVector::one(f, 2) * WittVector::one(g, 2)), Error);
  const unsigned cap = witt_precision_cap();
  set_witt_precision_cap(3);
  try {
    WittVector::one(f, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionLimit);
  }
  set_witt_precision_cap(cap);
  EXPECT_THROW(witt_inverse(WittVector::from_integer(f, 2, 3)), Error);
}

TEST(WittLinalg, ElementaryDivisorsAndInverse) {
  Field f = make_field(2, 2);
  const unsigned m = 3;
  std::mt19937 rng(21);
  const WittVector p = WittVector::from_integer(f, m, 2);
  WMatrix d = wzero(f, m, 3, 3);
  d[0][0] = WittVector::one(f, m);
  d[1][1] = p;
  d[2][2] = p * p;
  // Multiply by random unimodular matrices on both sides.
  for (int t = 0; t < 20; ++t) {
    WMatrix u = widentity(f, m, 3), v = widentity(f, m, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        u[i][j] = random_witt(f, m, rng);
        v[j][i] = random_witt(f, m, rng);
      }
    }
    WMatrix a = wmatmul(wmatmul(u, d), v);
    EXPECT_EQ(elementary_divisor_exponents(a), (std::vector<unsigned>{0, 1, 2}));
    auto inv = winverse(wmatmul(u, v));
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(wmatmul(wmatmul(u, v), *inv), widentity(f, m, 3));
    EXPECT_FALSE(winverse(a).has_value());
  }
}
