#include <gtest/gtest.h>

#include <random>

#include "hopfdual/normal_forms.hpp"
#include "oracles.hpp"

using namespace hopfdual;

namespace {

const CoeffRing ZZ = CoeffRing::integers();
const CoeffRing Z4 = CoeffRing::integers_mod(4);

void expect_smith_valid(const RMatrix& m, const SmithResult& s) {
  EXPECT_EQ(s.u * m * s.v, s.d) << "u*m*v != d for " << m;
  EXPECT_TRUE(is_invertible(s.u));
  EXPECT_TRUE(is_invertible(s.v));
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j) {
        EXPECT_TRUE(is_zero(s.d(i, j)));
      }
  const Vector diag = s.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) EXPECT_TRUE(m.ring().divides(diag[i], diag[i + 1]));
}

}  // namespace

TEST(SmithNormalForm, EmptyMatrix) {
  RMatrix m(ZZ, 0, 0);
  SmithResult s = smith_normal_form(m);
  EXPECT_EQ(s.u.rows(), 0u);
  EXPECT_EQ(s.d.rows(), 0u);
  EXPECT_EQ(s.v.rows(), 0u);
}

TEST(SmithNormalForm, Identity) {
  RMatrix id = RMatrix::identity(ZZ, 2);
  EXPECT_EQ(smith_normal_form(id).d, id);
}

TEST(SmithNormalForm, TwoByTwoMatchesMinorOracle) {
  RMatrix m(ZZ, {{2, 4}, {6, 8}});
  // oracle: gcd of entries = 2, |det| / 2 = 8 / 2 = 4
  auto oracle_d = oracle::invariant_factors_by_minors(m);
  ASSERT_EQ(oracle_d.size(), 2u);
  EXPECT_EQ(oracle_d[0], 2);
  EXPECT_EQ(oracle_d[1], 4);
  SmithResult s = smith_normal_form(m);
  expect_smith_valid(m, s);
  EXPECT_EQ(s.d, RMatrix(ZZ, {{2, 0}, {0, 4}}));
}

TEST(SmithNormalForm, RejectsCompositeModulus) {
  try {
    smith_normal_form(RMatrix(Z4, {{2}}));
    FAIL() << "expected UnsupportedRing";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedRing);
  }
}

TEST(SmithNormalForm, RandomAgainstDeterminantalDivisors) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    RMatrix m = oracle::random_matrix(rng, ZZ, dim(rng), dim(rng), 9);
    SmithResult s = smith_normal_form(m);
    expect_smith_valid(m, s);
    auto expected = oracle::invariant_factors_by_minors(m);
    ASSERT_EQ(s.rank, expected.size()) << m;
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(s.d(i, i).get_num(), expected[i]) << m;
  }
}

TEST(SmithNormalForm, OverPrimeFieldIsRankForm) {
  const CoeffRing F5 = CoeffRing::prime_field(5);
  RMatrix m(F5, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  SmithResult s = smith_normal_form(m);
  expect_smith_valid(m, s);
  EXPECT_EQ(s.rank, 2u);
  EXPECT_EQ(s.d(0, 0), 1);
  EXPECT_EQ(s.d(1, 1), 1);
}

TEST(HowellForm, Identity) {
  RMatrix id = RMatrix::identity(Z4, 3);
  EXPECT_EQ(howell_form(id), id);
}

TEST(HowellForm, SingleRowAlreadyCanonical) {
  RMatrix m(Z4, {{2}});
  EXPECT_EQ(howell_form(m), m);
}

TEST(HowellForm, SpanOfOrderEight) {
  RMatrix m(Z4, {{2, 0}, {0, 2}, {1, 1}});
  RMatrix h = howell_form(m);
  auto expected = oracle::enumerate_span(m);
  EXPECT_EQ(expected.size(), 8u);
  EXPECT_EQ(oracle::enumerate_span(h), expected);
}

TEST(HowellForm, RejectsPid) {
  EXPECT_THROW(howell_form(RMatrix(ZZ, {{1}})), Error);
}

TEST(HowellForm, SpanPreservedAndCanonical) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> rows(1, 4), cols(1, 3);
  for (long n : {4L, 6L, 8L}) {
    const CoeffRing R = CoeffRing::integers_mod(n);
    for (int trial = 0; trial < 40; ++trial) {
      RMatrix m = oracle::random_matrix(rng, R, rows(rng), cols(rng), 9);
      RMatrix h = howell_form(m);
      EXPECT_EQ(oracle::enumerate_span(h), oracle::enumerate_span(m)) << m;
      // canonical: a shuffled, row-combined presentation gives the same form
      RMatrix m2 = m;
      if (m2.rows() > 1) {
        m2.swap_rows(0, m2.rows() - 1);
        m2.add_row_multiple(0, 1, R.from_int(3));
      }
      EXPECT_EQ(howell_form(m2), h) << m;
      // Howell property: vectors vanishing on leading columns reduce to 0
      Echelon e{h, {}};
      for (std::size_t i = 0; i < h.rows(); ++i) e.pivots.push_back(leading_column(h.row(i)));
      for (const auto& v : oracle::enumerate_span(m)) {
        Vector sv;
        for (long x : v) sv.push_back(Scalar(x));
        EXPECT_TRUE(in_span(sv, e));
      }
    }
  }
}

TEST(Kernel, IdentityHasZeroKernel) {
  EXPECT_EQ(kernel(RMatrix::identity(ZZ, 3)).rows(), 0u);
  EXPECT_EQ(kernel(RMatrix::identity(Z4, 3)).rows(), 0u);
}

TEST(Kernel, TwoOverZ4) {
  RMatrix k = kernel(RMatrix(Z4, {{2}}));
  // enumerate Z4: x*2 = 0 iff x in {0, 2}
  std::set<oracle::IntVec> expected{{0}, {2}};
  EXPECT_EQ(oracle::enumerate_span(k), expected);
}

TEST(Kernel, SumMapOverZ) {
  RMatrix k = kernel(RMatrix(ZZ, {{1}, {1}}));
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_TRUE(same_span(k, RMatrix(ZZ, {{1, -1}})));
}

TEST(Kernel, GeneratorsAnnihilateAndEnumerationAgrees) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 3);
  for (long n : {4L, 6L}) {
    const CoeffRing R = CoeffRing::integers_mod(n);
    for (int trial = 0; trial < 30; ++trial) {
      RMatrix m = oracle::random_matrix(rng, R, dim(rng), dim(rng), 9);
      RMatrix k = kernel(m);
      for (std::size_t i = 0; i < k.rows(); ++i) EXPECT_TRUE(vec_is_zero(vec_mul(k.row(i), m)));
      std::set<oracle::IntVec> brute;
      for (const auto& x : oracle::all_vectors(n, m.rows()))
      {
        const oracle::IntVec image = oracle::times(x, m);
        if (std::all_of(image.begin(), image.end(), [](long v) { return v == 0; })) brute.insert(x);
      }
      RMatrix kk = k.rows() ? k : RMatrix(R, 0, m.rows());
      EXPECT_EQ(oracle::enumerate_span(kk), brute) << m;
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    RMatrix m = oracle::random_matrix(rng, ZZ, dim(rng), dim(rng), 9);
    RMatrix k = kernel(m);
    for (std::size_t i = 0; i < k.rows(); ++i) EXPECT_TRUE(vec_is_zero(vec_mul(k.row(i), m)));
    EXPECT_EQ(k.rows() + rank(m), m.rows());
  }
}

TEST(Solve, IdentityReturnsRhs) {
  Vector b{Scalar(3), Scalar(-7)};
  auto x = solve(RMatrix::identity(ZZ, 2), b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, b);
}

TEST(Solve, ParityObstruction) { EXPECT_FALSE(solve(RMatrix(ZZ, {{2}}), {Scalar(1)})); }

TEST(Solve, TwoOverZ4) {
  auto x = solve(RMatrix(Z4, {{2}}), {Scalar(2)});
  ASSERT_TRUE(x);
  EXPECT_TRUE((*x)[0] == 1 || (*x)[0] == 3);
}

TEST(Solve, ShapeMismatch) {
  try {
    solve(RMatrix(ZZ, {{1, 2}}), {Scalar(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(Solve, RandomConsistency) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dim(1, 4);
  for (const CoeffRing& R : {ZZ, Z4, CoeffRing::integers_mod(6), CoeffRing::prime_field(7)}) {
    for (int trial = 0; trial < 30; ++trial) {
      RMatrix m = oracle::random_matrix(rng, R, dim(rng), dim(rng), 9);
      Vector x0 = oracle::random_matrix(rng, R, 1, m.rows(), 9).row(0);
      Vector b = vec_mul(x0, m);
      auto x = solve(m, b);
      ASSERT_TRUE(x) << m;
      EXPECT_EQ(vec_mul(*x, m), b);
    }
  }
}

TEST(Kronecker, UnitLeftFactor) {
  RMatrix b(ZZ, {{1, 2}, {3, 4}});
  EXPECT_EQ(kronecker(RMatrix::identity(ZZ, 1), b), b);
}

TEST(Kronecker, Scalars) { EXPECT_EQ(kronecker(RMatrix(ZZ, {{2}}), RMatrix(ZZ, {{3}})), RMatrix(ZZ, {{6}})); }

TEST(Kronecker, Diagonals) {
  RMatrix a = RMatrix::diagonal(ZZ, {Scalar(1), Scalar(2)});
  RMatrix b = RMatrix::diagonal(ZZ, {Scalar(1), Scalar(3)});
  EXPECT_EQ(kronecker(a, b), RMatrix::diagonal(ZZ, {Scalar(1), Scalar(3), Scalar(2), Scalar(6)}));
}

TEST(Kronecker, RingMismatch) {
  EXPECT_THROW(kronecker(RMatrix(ZZ, {{1}}), RMatrix(Z4, {{1}})), Error);
}

TEST(Kronecker, MixedProductProperty) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dim(1, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t p = dim(rng), q = dim(rng), r = dim(rng), s = dim(rng), t = dim(rng), u = dim(rng);
    RMatrix a = oracle::random_matrix(rng, ZZ, p, q, 5), c = oracle::random_matrix(rng, ZZ, q, r, 5);
    RMatrix b = oracle::random_matrix(rng, ZZ, s, t, 5), d = oracle::random_matrix(rng, ZZ, t, u, 5);
    EXPECT_EQ(kronecker(a, b) * kronecker(c, d), kronecker(a * c, b * d));
  }
}

TEST(Determinant, AgreesWithCofactorExpansion) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    RMatrix m = oracle::random_matrix(rng, ZZ, 4, 4, 9);
    std::vector<std::vector<mpz_class>> a(4, std::vector<mpz_class>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a[i][j] = m(i, j).get_num();
    EXPECT_EQ(determinant(m).get_num(), oracle::brute_det(a));
  }
}
