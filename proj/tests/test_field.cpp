#include <gtest/gtest.h>

#include "crystalkit/field.hpp"
#include "crystalkit/linalg.hpp"
#include "support.hpp"

using namespace crystalkit;
using ck_test::random_element;
using ck_test::random_nonzero;

TEST(Primes, SmallValues) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(3));
  EXPECT_FALSE(is_prime(9));
  EXPECT_TRUE(is_prime(65521));
  EXPECT_FALSE(is_prime(65535));
}

TEST(Irreducible, KnownPolynomials) {
  EXPECT_TRUE(is_irreducible({1, 1, 1}, 2));
  EXPECT_FALSE(is_irreducible({1, 0, 1}, 2));
  EXPECT_TRUE(is_irreducible({1, 0, 1}, 3));
  EXPECT_TRUE(is_irreducible({1, 1, 0, 0, 1}, 2));
  // (x^2+x+1)^2 has no roots but is reducible.
  EXPECT_FALSE(is_irreducible({1, 0, 1, 0, 1}, 2));
}

TEST(MakeField, DefaultModuli) {
  EXPECT_EQ(make_field(2, 2)->modulus(), (std::vector<Coeff>{1, 1, 1}));
  EXPECT_EQ(make_field(2, 4)->modulus(), (std::vector<Coeff>{1, 1, 0, 0, 1}));
  EXPECT_EQ(make_field(3, 2)->modulus(), (std::vector<Coeff>{1, 0, 1}));
  EXPECT_EQ(make_field(5, 1)->modulus(), (std::vector<Coeff>{0, 1}));
}

TEST(MakeField, Interned) {
  EXPECT_EQ(make_field(3, 2), make_field(3, 2));
  EXPECT_EQ(make_field(3, 2), make_field(3, 2, std::vector<Coeff>{1, 0, 1}));
  EXPECT_NE(make_field(3, 2), make_field(3, 2, std::vector<Coeff>{2, 1, 1}));
}

TEST(MakeField, Errors) {
  try {
    make_field(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
  try {
    make_field(2, 2, std::vector<Coeff>{1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReducibleModulus);
  }
}

TEST(Element, IndexRoundTripAndOrder) {
  Field f = make_field(3, 2);
  auto all = all_elements(f);
  ASSERT_EQ(all.size(), 9u);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].index(), i);
    EXPECT_EQ(FFElement::from_index(f, i), all[i]);
    if (i) EXPECT_TRUE(all[i - 1] < all[i]);
  }
  EXPECT_TRUE(all[1].is_one());
}

TEST(Element, FrobeniusOfGeneratorInF4) {
  Field f = make_field(2, 2);
  FFElement g = FFElement::generator(f);
  EXPECT_EQ(frobenius(g, 1), g + FFElement::one(f));
  EXPECT_EQ(frobenius(g, -1), frobenius(g, 1));
}

TEST(Element, ParseAndPrint) {
  Field f = make_field(5, 3);
  FFElement x = parse_element(f, "1,4,2");
  EXPECT_EQ(x.str(), "1,4,2");
  EXPECT_THROW(parse_element(f, "1,5,2"), Error);
  EXPECT_THROW(parse_element(f, "1,2"), Error);
  EXPECT_THROW(parse_element(f, "1,,2"), Error);
  EXPECT_THROW(parse_element(f, "99999999999999999999,0,0"), Error);
}

TEST(Element, CrossFieldArithmeticRejected) {
  Field a = make_field(2, 2), b = make_field(2, 3);
  try {
    (void)(FFElement::one(a) + FFElement::one(b));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompatibleFields);
  }
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

TEST_P(FieldAxioms, RandomSamples) {
  const auto [p, n] = GetParam();
  Field f = make_field(p, n);
  std::mt19937 rng(1000 * p + n);
  const FFElement one = FFElement::one(f);
  for (int t = 0; t < 300; ++t) {
    FFElement a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a - a, FFElement::zero(f));
    EXPECT_EQ(a + (-a), FFElement::zero(f));
    EXPECT_EQ(a * one, a);
    EXPECT_EQ(frobenius(a + b, 1), frobenius(a, 1) + frobenius(b, 1));
    EXPECT_EQ(frobenius(a * b, 1), frobenius(a, 1) * frobenius(b, 1));
    EXPECT_EQ(frobenius(a, 1), a.pow(p));
    EXPECT_EQ(frobenius(a, n), a);
    EXPECT_EQ(frobenius(frobenius(a, 1), -1), a);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), one);
      EXPECT_EQ(b / a * a, b);
    }
    EXPECT_LT(trace(a), p);
    EXPECT_EQ((trace(a) + trace(b)) % p, trace(a + b));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(std::make_pair(2u, 1u), std::make_pair(2u, 4u),
                                           std::make_pair(2u, 7u), std::make_pair(3u, 2u),
                                           std::make_pair(3u, 5u), std::make_pair(5u, 3u),
                                           std::make_pair(7u, 2u)));

TEST(Element, MultiplicativeOrder) {
  Field f = make_field(2, 4);
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    FFElement a = random_nonzero(f, rng);
    EXPECT_TRUE(a.pow(15).is_one());
  }
}

TEST(Embedding, HomomorphismAndRootOfModulus) {
  std::mt19937 rng(11);
  const std::pair<Field, Field> pairs[] = {
      {make_field(2, 2), make_field(2, 4)},
      {make_field(2, 2), make_field(2, 6)},
      {make_field(3, 2), make_field(3, 6)},
      {make_field(2, 3), make_field(2, 6)},
      {make_field(5, 1), make_field(5, 3)},
  };
  for (const auto& [sub, sup] : pairs) {
    FFElement g = embed(FFElement::generator(sub), sup);
    // The generator's image is a root of the sub-modulus.
    FFElement acc = FFElement::zero(sup);
    for (std::size_t k = sub->modulus().size(); k-- > 0;) {
      acc = acc * g + FFElement::from_int(sup, sub->modulus()[k]);
    }
    EXPECT_TRUE(acc.is_zero());
    for (int t = 0; t < 100; ++t) {
      FFElement a = random_element(sub, rng), b = random_element(sub, rng);
      EXPECT_EQ(embed(a + b, sup), embed(a, sup) + embed(b, sup));
      EXPECT_EQ(embed(a * b, sup), embed(a, sup) * embed(b, sup));
      EXPECT_EQ(embed(frobenius(a, 1), sup), frobenius(embed(a, sup), 1));
    }
  }
  EXPECT_THROW(embed(FFElement::one(make_field(2, 2)), make_field(2, 3)), Error);
}

TEST(Embedding, Transitive) {
  std::mt19937 rng(12);
  Field a = make_field(2, 2), b = make_field(2, 4), c = make_field(2, 8);
  for (int t = 0; t < 50; ++t) {
    FFElement x = random_element(a, rng);
    // Embeddings into a common superfield agree up to a Frobenius power.
    FFElement direct = embed(x, c), via = embed(embed(x, b), c);
    bool conj = false;
    for (int k = 0; k < 8; ++k) conj = conj || frobenius(direct, k) == via;
    EXPECT_TRUE(conj);
  }
}

TEST(Linalg, FpSolveMatchesBruteForce) {
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::uint32_t p = t % 2 ? 3 : 2;
    FpMatrix a(p, 3, 3);
    std::vector<Coeff> b(3);
    for (int i = 0; i < 3; ++i) {
      b[i] = rng() % p;
      for (int j = 0; j < 3; ++j) a.at(i, j) = rng() % p;
    }
    FpSolution s = solve(a, b);
    std::size_t count = 0;
    for (unsigned x = 0; x < p * p * p; ++x) {
      Coeff v[3] = {x % p, (x / p) % p, x / (p * p)};
      bool ok = true;
      for (int i = 0; i < 3; ++i) {
        std::uint64_t acc = 0;
        for (int j = 0; j < 3; ++j) acc += a.at(i, j) * v[j];
        ok = ok && acc % p == b[i];
      }
      count += ok;
    }
    std::size_t expect = s.particular ? 1 : 0;
    for (std::size_t k = 0; k < s.kernel.size(); ++k) expect *= p;
    EXPECT_EQ(count, expect);
  }
}

TEST(Linalg, InverseAndDeterminant) {
  Field f = make_field(3, 2);
  std::mt19937 rng(9);
  for (int t = 0; t < 50; ++t) {
    FMatrix a = ck_test::random_matrix(f, 3, 3, rng);
    auto inv = inverse(a);
    EXPECT_EQ(inv.has_value(), !determinant(a).is_zero());
    if (inv) EXPECT_EQ(matmul(a, *inv), identity_matrix(f, 3));
  }
}
