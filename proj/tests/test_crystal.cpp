#include <gtest/gtest.h>

#include <algorithm>

#include "crystalkit/crystal.hpp"
#include "crystalkit/embedding.hpp"
#include "support.hpp"

using namespace crystalkit;
using ck_test::code_of;

namespace {

std::vector<CycleType> all_cycle_types(unsigned dmax) {
  std::vector<CycleType> out;
  for (unsigned d = 1; d <= dmax; ++d) {
    std::vector<unsigned> perm(d);
    std::iota(perm.begin(), perm.end(), 1u);
    do {
      for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<int> eps(d);
        for (unsigned i = 0; i < d; ++i) eps[i] = (mask >> i) & 1;
        out.emplace_back(ck_test::cycles_of(perm), eps);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace

TEST(CycleType, Accessors) {
  CycleType ct({{1, 3}, {2}}, {0, 1, 1});
  EXPECT_EQ(ct.rank(), 3u);
  EXPECT_EQ(ct.pi(1), 3u);
  EXPECT_EQ(ct.pi(3), 1u);
  EXPECT_EQ(ct.pi(2), 2u);
  EXPECT_EQ(ct.hodge_rank(), 2u);
  EXPECT_EQ(ct.cycle_of(3), 0u);
}

TEST(CycleType, Validation) {
  EXPECT_EQ(code_of([] { CycleType({{1, 1}}, {0, 0}); }), ErrorCode::BadShape);
  EXPECT_EQ(code_of([] { CycleType({{1}}, {0, 0}); }), ErrorCode::BadShape);
  EXPECT_EQ(code_of([] { CycleType({{1, 3}}, {0, 0}); }), ErrorCode::BadShape);
  EXPECT_EQ(code_of([] { CycleType({{1}}, {2}); }), ErrorCode::BadShape);
  EXPECT_EQ(code_of([] { CycleType({{}}, {}); }), ErrorCode::BadShape);
}

TEST(Newton, TwoCycleHasSlopeHalf) {
  EXPECT_EQ(newton_polygon(CycleType({{1, 2}}, {0, 1})), (Polygon{{mpq_class(1, 2), 2}}));
}

TEST(Newton, MergesEqualSlopes) {
  CycleType ct({{1, 2}, {3, 4}, {5}}, {1, 0, 0, 1, 1});
  EXPECT_EQ(newton_polygon(ct), (Polygon{{mpq_class(1, 2), 4}, {mpq_class(1), 1}}));
}

TEST(Newton, LubinTateSlope) {
  for (unsigned r = 1; r <= 6; ++r) {
    StdModule lt = lubin_tate_module(2, 2, r, make_field(2, 1));
    EXPECT_EQ(newton_polygon(lt), (Polygon{{mpq_class(1, r), r}}));
  }
}

TEST(Newton, LiesAboveHodgeWithSameEndpoints) {
  Field f = make_field(2, 1);
  for (const auto& ct : all_cycle_types(4)) {
    StdModule mod = standard_module(2, 1, ct, f);
    EXPECT_TRUE(polygon_lies_above(newton_polygon(mod), hodge_polygon(mod)));
  }
  EXPECT_FALSE(polygon_lies_above(Polygon{{mpq_class(0), 1}, {mpq_class(1), 1}},
                                  Polygon{{mpq_class(1, 2), 2}}));
}

TEST(StandardModule, LatticeAxiomsHold) {
  for (std::uint32_t p : {2u, 3u}) {
    Field f = make_field(p, 2);
    for (unsigned m = 1; m <= 3; ++m) {
      for (const auto& ct : all_cycle_types(3)) {
        StdModule mod = standard_module(p, m, ct, f);
        LatticeReport rep = check_lattice_axioms(mod);
        EXPECT_TRUE(rep.ok());
        if (m >= 2) {
          LatticeReport derived = check_lattice_axioms(mod.phi, ct.eps());
          EXPECT_TRUE(derived.ok());
          std::vector<unsigned> expect;
          for (int e : ct.eps()) expect.push_back(static_cast<unsigned>(e));
          std::sort(expect.begin(), expect.end());
          EXPECT_EQ(rep.elementary_exponents, expect);
        }
      }
    }
  }
}

TEST(StandardModule, BrokenLatticesAreRejected) {
  Field f = make_field(2, 1);
  const unsigned m = 3;
  CycleType ct({{1, 2}}, {0, 1});
  StdModule mod = standard_module(2, m, ct, f);
  // p^2 on an eps = 1 column breaks pM in phi(M) and surjectivity of phi_1.
  WMatrix phi = mod.phi;
  phi[0][1] = WittVector::from_integer(f, m, 4);
  LatticeReport rep = check_lattice_axioms(phi, ct.eps());
  EXPECT_FALSE(rep.p_m_in_image);
  EXPECT_FALSE(rep.divided_surjective);
  // A unit on an eps = 1 column is not divisible by p.
  WMatrix unit = mod.phi;
  unit[0][1] = WittVector::one(f, m);
  EXPECT_FALSE(check_lattice_axioms(unit, ct.eps()).ok());
  // An inconsistent divided matrix.
  WMatrix div = mod.divided_phi();
  div[0][1] = WittVector::from_integer(f, m, 3);
  EXPECT_FALSE(check_lattice_axioms(mod.phi, div, ct.eps()).divided_consistent);
  StdModule m1 = standard_module(2, 1, ct, f);
  EXPECT_EQ(code_of([&] { check_lattice_axioms(m1.phi, ct.eps()); }), ErrorCode::PrecisionLimit);
}

TEST(SlopeDecomposition, ReassemblesPhi) {
  Field f = make_field(3, 1);
  for (const auto& ct : all_cycle_types(4)) {
    StdModule mod = standard_module(3, 2, ct, f);
    auto parts = slope_decomposition(mod);
    EXPECT_EQ(parts.size(), ct.cycles().size());
    EXPECT_EQ(direct_sum_phi(parts, ct.rank()), mod.phi);
    Polygon merged;
    for (const auto& part : parts) {
      for (const auto& pt : newton_polygon(part.module)) merged.push_back(pt);
    }
    EXPECT_EQ(normalize_polygon(merged), newton_polygon(mod));
  }
}

TEST(Slopes, ZeroAndOne) {
  Field f = make_field(2, 1);
  EXPECT_TRUE(has_slopes_0_and_1(standard_module(2, 1, CycleType({{1}, {2}}, {0, 1}), f)));
  EXPECT_FALSE(has_slopes_0_and_1(standard_module(2, 1, CycleType({{1, 2}}, {0, 1}), f)));
  EXPECT_FALSE(has_slopes_0_and_1(standard_module(2, 1, CycleType({{1}, {2}}, {1, 1}), f)));
}

TEST(StandardModule, CharacteristicMismatch) {
  EXPECT_EQ(code_of([] { standard_module(3, 1, CycleType({{1}}, {0}), make_field(2, 1)); }),
            ErrorCode::IncompatibleFields);
}
