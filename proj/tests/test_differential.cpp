#include <gtest/gtest.h>

#include "twisthc/differential.hpp"

namespace {

using namespace twisthc;

const SignConvention kPlus{1, -1};
const SignConvention kMinus{-1, 1};

bool has_pair(const std::vector<ConnectingPair>& pairs, int family, const Orbit& lower,
              const Orbit& upper) {
  for (const auto& p : pairs) {
    if (p.family == family && p.lower == lower && p.upper == upper) return true;
  }
  return false;
}

TEST(Signs, IllegalConventionsRejected) {
  EXPECT_THROW(SignConvention(1, 1), std::invalid_argument);
  EXPECT_THROW(SignConvention(-1, -1), std::invalid_argument);
  EXPECT_THROW(SignConvention(2, -1), std::invalid_argument);
  EXPECT_FALSE(SignConvention::unchecked(1, 1).is_legal());
  EXPECT_TRUE(kMinus.is_legal());
}

TEST(RelativeDimension, Examples) {
  EXPECT_EQ(relative_dimension(Orbit::elliptic(1, 2), Orbit::hyperbolic(1, 2)), 1);
  EXPECT_EQ(relative_dimension(Orbit::hyperbolic(1, 1), Orbit::elliptic(1, 2)), 1);
  EXPECT_EQ(relative_dimension(Orbit::elliptic(1, 2), Orbit::elliptic(1, 2)), 0);
  EXPECT_THROW(relative_dimension(Orbit::binding(1), Orbit::core(2)), std::invalid_argument);
}

TEST(AllowedPairs, Examples) {
  const auto s2 = allowed_pairs(2, 2);
  EXPECT_TRUE(has_pair(s2, 3, Orbit::core(1), Orbit::elliptic(2, 2)));
  EXPECT_TRUE(has_pair(s2, 5, Orbit::core(1), Orbit::elliptic(2, 2)));
  EXPECT_TRUE(has_pair(s2, 1, Orbit::elliptic(1, 1), Orbit::hyperbolic(1, 1)));
  EXPECT_TRUE(has_pair(allowed_pairs(1, 2), 5, Orbit::core(1), Orbit::elliptic(1, 2)));
  for (std::int64_t sigma = 2; sigma <= 5; ++sigma) {
    EXPECT_TRUE(has_pair(allowed_pairs(sigma, 1), 1, Orbit::elliptic(1, 1), Orbit::hyperbolic(1, 1)));
  }
}

TEST(AllowedPairs, AllHaveDimensionOne) {
  for (std::int64_t sigma = 1; sigma <= 5; ++sigma) {
    for (const auto& p : allowed_pairs(sigma, 8)) {
      EXPECT_EQ(relative_dimension(p.lower, p.upper), 1) << p.lower.label() << " " << p.upper.label();
      EXPECT_EQ(homology_class(p.lower, sigma), homology_class(p.upper, sigma));
    }
  }
}

TEST(ModuliCount, Examples) {
  EXPECT_EQ(moduli_count(Orbit::hyperbolic(1, 1), Orbit::elliptic(1, 2), 2), Rat(1));
  EXPECT_EQ(moduli_count(Orbit::core(1), Orbit::elliptic(2, 2), 2), Rat(1));
  EXPECT_EQ(moduli_count_raw(0, 2, 2), Rat(1));
  // h^2 with n' = 0 under e_{n/3}: 6 / (kappa(0,2) kappa(3,3)) = 1.
  EXPECT_EQ(moduli_count_raw(0, 3, 3), Rat(1));
  EXPECT_EQ(moduli_count(Orbit::core(2), Orbit::elliptic(2, 3), 1), Rat(1));
  EXPECT_THROW(moduli_count(Orbit::hyperbolic(1, 2), Orbit::elliptic(1, 2), 2), std::invalid_argument);
}

TEST(ModuliCount, AlwaysPositiveInteger) {
  for (std::int64_t sigma = 1; sigma <= 6; ++sigma) {
    for (const auto& p : allowed_pairs(sigma, 20)) {
      if (p.family == 1) continue;
      const Rat c = moduli_count_raw(p.lower_numerator, p.upper.n, p.upper.m);
      EXPECT_TRUE(c.is_integer() && c.sign() > 0) << p.lower.label() << " -> " << p.upper.label();
    }
  }
}

TEST(Boundary, Examples) {
  EXPECT_TRUE(boundary(Orbit::hyperbolic(3, 7), 1, kPlus).is_zero());
  EXPECT_TRUE(boundary(Orbit::hyperbolic(3, 7), 4, kPlus).is_zero());
  EXPECT_TRUE(boundary(Orbit::core(3), 2, kPlus).is_zero());
  EXPECT_TRUE(boundary(Orbit::elliptic(1, 1), 2, kPlus).is_zero());

  for (const auto& s : {kPlus, kMinus}) {
    EXPECT_EQ(boundary(Orbit::elliptic(1, 2), 2, s), ChainQ(Orbit::hyperbolic(1, 1), Rat(s.c_minus())));
    EXPECT_TRUE(boundary(Orbit::elliptic(2, 2), 2, s).is_zero());
    ChainQ want(Orbit::hyperbolic(1, 2), Rat(s.c_minus()));
    want.add(Orbit::core(2), Rat(s.c_plus()));
    EXPECT_EQ(boundary(Orbit::elliptic(1, 3), 1, s), want);
  }
}

TEST(Boundary, TermsBeforeMerging) {
  const auto terms = boundary_terms(Orbit::elliptic(2, 2), 2, kPlus);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].coefficient, Rat(2));
  EXPECT_EQ(terms[1].coefficient, Rat(-2));
  EXPECT_EQ(terms[0].target, Orbit::core(1));
  EXPECT_EQ(terms[1].target, Orbit::core(1));
}

TEST(BoundaryMatrix, Examples) {
  const auto d1 = boundary_matrix(1, 1, kPlus);
  EXPECT_EQ(d1.matrix.rows(), 1u);
  EXPECT_TRUE(d1.matrix.is_zero());

  const auto d2 = boundary_matrix(2, 2, kPlus);
  EXPECT_TRUE(d2.matrix.column(*d2.index_of(Orbit::elliptic(2, 2))).empty());
  const auto& col = d2.matrix.column(*d2.index_of(Orbit::elliptic(1, 2)));
  ASSERT_EQ(col.size(), 1u);
  EXPECT_EQ(col.begin()->first, *d2.index_of(Orbit::hyperbolic(1, 1)));
  EXPECT_EQ(col.begin()->second, Rat(1));
}

TEST(BoundaryMatrix, SerialMatchesParallel) {
  for (std::int64_t sigma : {1, 3, 5}) {
    const auto a = boundary_matrix(sigma, 15, kPlus, false, Execution::Serial);
    const auto b = boundary_matrix(sigma, 15, kPlus, false, Execution::Parallel);
    EXPECT_EQ(a.generators, b.generators);
    EXPECT_TRUE(a.matrix == b.matrix);
  }
}

TEST(BoundaryMatrix, BindingColumnsAndRowsEmpty) {
  const auto d = boundary_matrix(2, 5, kPlus, true);
  for (std::int64_t m = 1; m <= 5; ++m) {
    const std::size_t j = *d.index_of(Orbit::binding(m));
    EXPECT_TRUE(d.matrix.column(j).empty());
    for (std::size_t c = 0; c < d.matrix.cols(); ++c) EXPECT_TRUE(d.matrix.get(j, c).is_zero());
  }
}

TEST(DSquared, ExamplesAndSweep) {
  EXPECT_TRUE(verify_d_squared(1, 20, kPlus));
  EXPECT_TRUE(verify_d_squared(5, 20, kPlus));
  for (std::int64_t sigma = 1; sigma <= 8; ++sigma) {
    for (std::int64_t M : {1, 2, 7, 25, 40}) {
      EXPECT_TRUE(verify_d_squared(sigma, M, kPlus)) << sigma << " " << M;
      EXPECT_TRUE(verify_d_squared(sigma, M, kMinus)) << sigma << " " << M;
    }
  }
}

TEST(DSquared, HoldsEvenForIllegalSigns) {
  // Image of d is spanned by hyperbolic orbits, which d kills.
  EXPECT_TRUE(verify_d_squared(3, 12, SignConvention::unchecked(1, 1)));
  EXPECT_TRUE(verify_d_squared(2, 12, SignConvention::unchecked(-1, -1)));
}

TEST(Consistency, PassesForBothConventions) {
  for (std::int64_t sigma = 1; sigma <= 5; ++sigma) {
    for (const auto& s : {kPlus, kMinus}) {
      const auto r = coefficient_consistency(sigma, 20, s);
      EXPECT_TRUE(r.ok) << r.counterexample;
    }
  }
}

TEST(Consistency, DetectsCorruptedEntry) {
  auto d = boundary_matrix(2, 5, kPlus);
  const std::size_t j = *d.index_of(Orbit::elliptic(1, 2));
  const std::size_t i = *d.index_of(Orbit::hyperbolic(1, 1));
  d.matrix.set(i, j, Rat(2));
  const auto r = coefficient_consistency(d, kPlus);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.counterexample.find("e_{1/2}"), std::string::npos);
  EXPECT_NE(r.counterexample.find("h_{1/1}"), std::string::npos);
}

TEST(Structure, ClassWindingDimension) {
  for (std::int64_t sigma = 1; sigma <= 6; ++sigma) {
    const auto r = structure_check(boundary_matrix(sigma, 15, kPlus));
    EXPECT_TRUE(r.ok) << r.counterexample;
  }
}

TEST(Energy, NonnegativeAlongDifferential) {
  for (std::int64_t sigma : {1, 2, 3, 5, 8}) {
    const auto r = energy_filter(boundary_matrix(sigma, 5, kPlus), LocalModelParams::for_sigma(sigma), 5);
    EXPECT_TRUE(r.ok) << r.counterexample;
  }
}

}  // namespace
