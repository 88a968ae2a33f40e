#include <gtest/gtest.h>

#include <random>

#include "hopfdual/fp_module.hpp"
#include "oracles.hpp"

using namespace hopfdual;

namespace {

const CoeffRing ZZ = CoeffRing::integers();
const CoeffRing QQ = CoeffRing::rationals();
const CoeffRing Z4 = CoeffRing::integers_mod(4);

FPModule cyc(const CoeffRing& R, long a) { return FPModule::cyclic(R, Scalar(a)); }

// 1-generated inclusion a*R -> R.
ModuleMap multiple_of(const CoeffRing& R, long a) {
  return submodule_inclusion(FPModule::free(R, 1), RMatrix::from_rows(R, 1, {{Scalar(a)}}));
}

// Order of a module over Z/n or a finite module over Z with exponent dividing e.
long brute_order(const FPModule& m, long e) {
  return oracle::group_order_mod(lift_to_integers(m.relations()), m.generator_count(), e);
}

FPModule random_module(std::mt19937& rng, const CoeffRing& R) {
  std::uniform_int_distribution<int> gens(1, 2), rels(0, 2);
  const std::size_t g = gens(rng);
  return FPModule(R, g, oracle::random_matrix(rng, R, rels(rng), g, 6));
}

}  // namespace

TEST(Tensor, UnitOfTensor) {
  FPModule n(ZZ, 2, RMatrix(ZZ, {{2, 4}}));
  EXPECT_TRUE(isomorphic(tensor_module(FPModule::free(ZZ, 1), n), n));
  EXPECT_TRUE(isomorphic(tensor_module(n, FPModule::free(ZZ, 1)), n));
}

TEST(Tensor, CoprimeTorsionVanishes) { EXPECT_TRUE(tensor_module(cyc(ZZ, 2), cyc(ZZ, 3)).is_zero_module()); }

TEST(Tensor, FourTensorTwo) {
  FPModule t = tensor_module(cyc(ZZ, 4), cyc(ZZ, 2));
  EXPECT_EQ(brute_order(t, 4), 2);
  EXPECT_EQ(t.invariants().torsion, std::vector<mpz_class>{2});
  EXPECT_EQ(t.invariants().free_rank, 0u);
}

TEST(Tensor, RingMismatch) {
  EXPECT_THROW(
      {
        try {
          tensor_module(cyc(ZZ, 2), cyc(Z4, 2));
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::RingMismatch);
          throw;
        }
      },
      Error);
}

TEST(Tensor, CyclicOrdersMatchEnumeration) {
  for (long a = 1; a <= 8; ++a)
    for (long b = 1; b <= 8; ++b) {
      FPModule t = tensor_module(cyc(ZZ, a), cyc(ZZ, b));
      EXPECT_EQ(brute_order(t, std::max(2L, a * b)), std::gcd(a, b)) << a << " " << b;
      mpz_class size = 1;
      for (const auto& d : t.invariants().torsion) size *= d;
      EXPECT_EQ(size, std::gcd(a, b));
    }
}

TEST(Tensor, AssociativeAndUnitalOnRandomModules) {
  std::mt19937 rng(5);
  for (const CoeffRing& R : {ZZ, Z4, CoeffRing::integers_mod(6), CoeffRing::prime_field(3)}) {
    for (int trial = 0; trial < 12; ++trial) {
      FPModule a = random_module(rng, R), b = random_module(rng, R), c = random_module(rng, R);
      EXPECT_TRUE(isomorphic(tensor_module(tensor_module(a, b), c), tensor_module(a, tensor_module(b, c))));
      EXPECT_TRUE(isomorphic(tensor_module(FPModule::free(R, 1), a), a));
      EXPECT_TRUE(isomorphic(tensor_module(a, b), tensor_module(b, a)));
    }
  }
}

TEST(Dual, FreeRankTwo) {
  FPModule d = dual_module(FPModule::free(ZZ, 2));
  EXPECT_TRUE(isomorphic(d, FPModule::free(ZZ, 2)));
  EXPECT_EQ(dual_module_basis(FPModule::free(ZZ, 2)), RMatrix::identity(ZZ, 2));
}

TEST(Dual, TorsionOverZHasNoFunctionals) { EXPECT_TRUE(dual_module(cyc(ZZ, 2)).is_zero_module()); }

TEST(Dual, TwoTorsionOverZ4) {
  // Hom(Z4/(2), Z4): a with 2a = 0 in Z4
  long maps = 0;
  for (long a = 0; a < 4; ++a)
    if ((2 * a) % 4 == 0) ++maps;
  FPModule d = dual_module(cyc(Z4, 2));
  EXPECT_EQ(brute_order(d, 4), maps);
  EXPECT_EQ(d.invariants().torsion, std::vector<mpz_class>{2});
}

TEST(Dual, HomCountsMatchEnumerationOverZmod) {
  std::mt19937 rng(9);
  for (long n : {4L, 6L, 8L}) {
    const CoeffRing R = CoeffRing::integers_mod(n);
    for (int trial = 0; trial < 15; ++trial) {
      FPModule m = random_module(rng, R);
      long homs = 0;
      for (const auto& phi : oracle::all_vectors(n, m.generator_count())) {
        bool ok = true;
        for (std::size_t r = 0; r < m.relations().rows() && ok; ++r) {
          long s = 0;
          for (std::size_t j = 0; j < phi.size(); ++j) s += m.relations()(r, j).get_num().get_si() * phi[j];
          ok = s % n == 0;
        }
        homs += ok;
      }
      EXPECT_EQ(brute_order(dual_module(m), n), homs);
    }
  }
}

TEST(Dual, ReflexiveOnFreeModules) {
  for (const CoeffRing& R : {ZZ, QQ, Z4, CoeffRing::prime_field(5)})
    for (std::size_t k = 0; k <= 3; ++k) {
      FPModule f = FPModule::free(R, k);
      EXPECT_TRUE(isomorphic(dual_module(dual_module(f)), f));
    }
}

TEST(Purity, DirectSummandIsPure) {
  ModuleMap incl = submodule_inclusion(FPModule::free(ZZ, 2), RMatrix(ZZ, {{1, 0}}));
  PurityVerdict v = is_pure_submodule(incl);
  EXPECT_TRUE(v.pure);
  ASSERT_TRUE(v.retraction);
  EXPECT_EQ(incl.matrix() * *v.retraction, RMatrix::identity(ZZ, 1));
}

TEST(Purity, TwoZInZIsNotPure) {
  PurityVerdict v = is_pure_submodule(multiple_of(ZZ, 2));
  EXPECT_FALSE(v.pure);
  ASSERT_TRUE(v.witness_module);
  EXPECT_TRUE(isomorphic(*v.witness_module, cyc(ZZ, 2)));
  EXPECT_EQ(v.kernel_element, (Vector{Scalar(1)}));
}

TEST(Purity, TwoZ4InZ4IsNotPure) {
  ModuleMap incl = multiple_of(Z4, 2);
  // brute: N (x) Z2 -> M (x) Z2 is multiplication by 2 on Z2
  EXPECT_EQ(brute_order(tensor_module(incl.source(), cyc(Z4, 2)), 4), 2);
  PurityVerdict v = is_pure_submodule(incl);
  EXPECT_FALSE(v.pure);
  ASSERT_TRUE(v.witness_module);
  EXPECT_EQ(v.witness_module->invariants().torsion, std::vector<mpz_class>{2});
  EXPECT_FALSE(tensor_module(incl.source(), *v.witness_module).is_zero_element(v.kernel_element));
}

TEST(Purity, NonInjectiveRejected) {
  ModuleMap zero(cyc(ZZ, 2), FPModule::free(ZZ, 1), RMatrix(ZZ, 1, 1));
  EXPECT_THROW(is_pure_submodule(zero), Error);
  ModuleMap f(FPModule::free(ZZ, 1), cyc(ZZ, 2), RMatrix(ZZ, {{1}}));
  try {
    is_x_pure(f, cyc(ZZ, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInjective);
  }
}

TEST(XPurity, Examples) {
  EXPECT_TRUE(is_x_pure(multiple_of(ZZ, 2), FPModule::free(ZZ, 1)));
  EXPECT_FALSE(is_x_pure(multiple_of(ZZ, 2), cyc(ZZ, 2)));
  EXPECT_TRUE(is_x_pure(multiple_of(ZZ, 3), cyc(ZZ, 2)));
}

// Injectivity of N (x) X -> M (x) X by counting: |image| == |N (x) X|.
bool brute_x_pure(const ModuleMap& incl, const FPModule& x, long e) {
  ModuleMap t = tensor_with(incl, x);
  const long source = brute_order(t.source(), e);
  const RMatrix rel = lift_to_integers(t.target().relations());
  const long target_quot =
      oracle::group_order_mod(vstack(rel, lift_to_integers(t.matrix())), t.target().generator_count(), e);
  const long target = oracle::group_order_mod(rel, t.target().generator_count(), e);
  return target / target_quot == source;
}

TEST(XPurity, AgreesWithCountingOverZmod) {
  std::mt19937 rng(21);
  for (long n : {4L, 6L, 8L}) {
    const CoeffRing R = CoeffRing::integers_mod(n);
    std::vector<FPModule> battery{FPModule::free(R, 1)};
    for (long d = 2; d < n; ++d)
      if (n % d == 0) battery.push_back(cyc(R, d));
    for (int trial = 0; trial < 10; ++trial) {
      FPModule m = random_module(rng, R);
      ModuleMap incl = submodule_inclusion(m, oracle::random_matrix(rng, R, 1, m.generator_count(), 7));
      for (const auto& x : battery) EXPECT_EQ(is_x_pure(incl, x), brute_x_pure(incl, x, n));
    }
  }
}

TEST(Purity, PureImpliesXPureOnBattery) {
  std::mt19937 rng(33);
  int pure_seen = 0;
  for (const CoeffRing& R : {ZZ, Z4, CoeffRing::integers_mod(6)}) {
    std::vector<FPModule> battery{cyc(R, 2), cyc(R, 3), cyc(R, 4), direct_sum(cyc(R, 2), cyc(R, 4)),
                                  FPModule::free(R, 1)};
    for (int trial = 0; trial < 25; ++trial) {
      FPModule m = random_module(rng, R);
      ModuleMap incl = submodule_inclusion(m, oracle::random_matrix(rng, R, 1, m.generator_count(), 4));
      PurityVerdict v = is_pure_submodule(incl);
      if (v.pure) {
        ++pure_seen;
        for (const auto& x : battery) EXPECT_TRUE(is_x_pure(incl, x));
      } else {
        ASSERT_TRUE(v.witness_module);
        EXPECT_FALSE(is_x_pure(incl, *v.witness_module));
      }
    }
  }
  EXPECT_GT(pure_seen, 0);
}

TEST(ElementOrder, Examples) {
  EXPECT_EQ(element_order(cyc(Z4, 0), Vector{Scalar(0)}), mpz_class(1));
  EXPECT_EQ(element_order(FPModule::free(Z4, 1), Vector{Scalar(1)}), mpz_class(4));
  // Z4[x]/(2x, x^3) on 1, x, x^2
  FPModule trunc(Z4, 3, RMatrix(Z4, {{0, 2, 0}, {0, 0, 2}}));
  EXPECT_EQ(element_order(trunc, Vector{Scalar(0), Scalar(1), Scalar(0)}), mpz_class(2));
  EXPECT_EQ(element_order(trunc, Vector{Scalar(1), Scalar(0), Scalar(0)}), mpz_class(4));
  EXPECT_FALSE(element_order(FPModule::free(ZZ, 1), Vector{Scalar(1)}));
  EXPECT_FALSE(element_order(FPModule::free(QQ, 1), Vector{Scalar(1, 2)}));
  EXPECT_EQ(element_order(FPModule::free(CoeffRing::prime_field(5), 1), Vector{Scalar(2)}), mpz_class(5));
}

TEST(ElementOrder, AgreesWithRepeatedAddition) {
  std::mt19937 rng(2);
  for (long n : {4L, 6L, 12L}) {
    const CoeffRing R = CoeffRing::integers_mod(n);
    for (int trial = 0; trial < 20; ++trial) {
      FPModule m = random_module(rng, R);
      for (const auto& v : oracle::all_vectors(n, m.generator_count())) {
        Vector sv;
        for (long x : v) sv.push_back(Scalar(x));
        EXPECT_EQ(element_order(m, sv), mpz_class(oracle::element_order_mod(lift_to_integers(m.relations()), v, n)));
      }
    }
  }
}

TEST(QuotientTensor, Examples) {
  EXPECT_TRUE(quotient_tensor_check(multiple_of(ZZ, 2), multiple_of(ZZ, 3)));
  EXPECT_TRUE(quotient_tensor_check(multiple_of(ZZ, 0), multiple_of(ZZ, 0)));
  FPModule z2 = FPModule::free(ZZ, 2);
  ModuleMap left = submodule_inclusion(z2, RMatrix(ZZ, {{1, 0}}));
  ModuleMap right = submodule_inclusion(z2, RMatrix(ZZ, {{0, 1}}));
  // both sides are Z (x) Z = Z
  EXPECT_TRUE(isomorphic(tensor_module(quotient(left), quotient(right)), FPModule::free(ZZ, 1)));
  EXPECT_TRUE(quotient_tensor_check(left, right));
}

TEST(QuotientTensor, HypothesisChecked) {
  // 2Z4 is not Z4/(2)-pure in Z4
  ModuleMap m_sub = multiple_of(Z4, 2);
  ModuleMap n_sub = submodule_inclusion(cyc(Z4, 2), RMatrix(Z4, {{0}}));
  try {
    quotient_tensor_check(m_sub, n_sub);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisFailed);
  }
}

TEST(CanonicalForm, RowOperationsAreACongruence) {
  std::mt19937 rng(4);
  for (const CoeffRing& R : {ZZ, Z4, CoeffRing::integers_mod(6), QQ}) {
    for (int trial = 0; trial < 20; ++trial) {
      FPModule m = random_module(rng, R);
      RMatrix rel = m.relations();
      if (rel.rows() >= 2) {
        rel.add_row_multiple(0, 1, Scalar(3));
        rel.swap_rows(0, 1);
      }
      rel = vstack(rel, RMatrix(R, 1, m.generator_count()));
      FPModule m2(R, m.generator_count(), rel);
      EXPECT_TRUE(same_presentation(m, m2));
      EXPECT_TRUE(isomorphic(m, m2));
    }
  }
}

TEST(ModuleMaps, WellDefinednessChecked) {
  EXPECT_THROW(ModuleMap(cyc(ZZ, 2), FPModule::free(ZZ, 1), RMatrix(ZZ, {{1}})), Error);
  EXPECT_NO_THROW(ModuleMap(cyc(ZZ, 2), cyc(ZZ, 4), RMatrix(ZZ, {{2}})));
}

TEST(ModuleMaps, InjectivityWitness) {
  ModuleMap f(cyc(ZZ, 4), cyc(ZZ, 2), RMatrix(ZZ, {{1}}));
  InjectivityReport r = f.injectivity();
  EXPECT_FALSE(r.injective);
  EXPECT_TRUE(f.source().equal_elements(r.witness, Vector{Scalar(2)}));
  EXPECT_TRUE(f.is_surjective());
  EXPECT_TRUE(ModuleMap(cyc(ZZ, 2), cyc(ZZ, 4), RMatrix(ZZ, {{2}})).is_injective());
}
