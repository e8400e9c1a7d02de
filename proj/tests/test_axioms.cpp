#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ozva/axioms.hpp"

using namespace ozva;

namespace {

struct Fixture {
  Generators G;
  Tower T;
  VertexTruncation V;
  Fixture(const std::string& json, int L, int D)
      : G(make_generators(load_algebra_json(json))), T(build_tower(G, L)), V(T, D) {}
};

void expect_clean(const CheckReport& r) {
  EXPECT_TRUE(r.ok()) << r.suite << ": " << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_EQ(r.passed, r.attempted);
  EXPECT_GT(r.attempted, 0) << r.suite;
}

}  // namespace

TEST(Axioms, SuitesPassOnExample2) {
  Fixture F(oracle::example2_json(), 3, 6);
  expect_clean(check_unit_translation(F.V));
  expect_clean(check_commutator(F.V));
  expect_clean(check_virasoro(F.V));
  expect_clean(check_griess(F.V));
  expect_clean(check_equivariance(F.V));
  expect_clean(check_b0_polynomiality(F.T, 3));
}

TEST(Axioms, VirasoroCentralCharge) {
  // <e,e> = 1/16 gives c = 1/2
  Fixture F(oracle::virasoro_json(Rat(1, 2)), 3, 6);
  EXPECT_EQ(F.G.form[0][0] * 2, Rat(1, 2));
  expect_clean(check_virasoro(F.V));
  auto om = F.V.generator(0);
  auto eq = equal_in_B(F.V, Elem(F.V.product(om, 3, om)), Elem(F.V.unit().scaled(Rat(1, 4))));
  ASSERT_TRUE(eq.has_value());
  EXPECT_TRUE(*eq);
  auto wrong = equal_in_B(F.V, Elem(F.V.product(om, 3, om)), Elem(F.V.unit().scaled(Rat(1, 2))));
  ASSERT_TRUE(wrong.has_value());
  EXPECT_FALSE(*wrong);
}

TEST(Axioms, NoUnitMeansNoVirasoroSuite) {
  Fixture F(oracle::zero_product_json(), 2, 4);
  EXPECT_THROW(check_virasoro(F.V), ValidationError);
}

TEST(Axioms, CorruptedTableIsCaught) {
  Fixture F(oracle::example2_json(), 3, 4);
  // x(-1) on omega: weight {x, omega}, degree 4
  F.V.corrupt_action(0, -1, {1}, 2, 0, 0, Rat(1, 3));
  auto r = check_commutator(F.V);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.passed + static_cast<int>(r.failures.size()), r.attempted);
  EXPECT_NE(r.failures.front().find("lhs"), std::string::npos);
}

TEST(Axioms, CorruptionSeenByUnitSuite) {
  Fixture F(oracle::example2_json(), 3, 4);
  F.V.corrupt_action(1, -1, {}, 0, 0, 0, Rat(2));  // omega(-1) 1 becomes 3 omega
  EXPECT_FALSE(check_unit_translation(F.V).ok());
}

TEST(Axioms, GriessRecoveryOnRandomInput) {
  Fixture F(oracle::random_algebra_json(11, 3), 3, 4);
  expect_clean(check_griess(F.V));
}

TEST(Axioms, GriessDetectsWrongProduct) {
  Fixture F(oracle::random_algebra_json(11, 3), 3, 4);
  auto& V = F.V;
  Elem ab = V.product(V.generator(0), 1, V.generator(1));
  Elem r;
  for (int k = 0; k < 3; ++k) r.add(V.generator(k), F.G.prod[0][1][k] + (k == 2 ? Rat(1) : Rat(0)));
  auto eq = equal_in_B(V, ab, r);
  ASSERT_TRUE(eq.has_value());
  EXPECT_FALSE(*eq);
}

TEST(Axioms, EquivarianceUnderSwap) {
  Fixture F(oracle::random_algebra_json(5, 3, true), 3, 4);
  ASSERT_FALSE(F.G.automorphisms.empty());
  auto sp = as_signed_perm(F.G.automorphisms[0]);
  ASSERT_TRUE(sp.has_value());
  expect_clean(check_equivariance(F.V));
}

TEST(Axioms, SkipsOutsideCutoff) {
  Fixture F(oracle::example2_json(), 2, 4);
  auto r = check_unit_translation(F.V);
  EXPECT_GT(r.skipped, 0);
  EXPECT_TRUE(r.ok());
}
