#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ozva/quotient.hpp"

using namespace ozva;

namespace {

Generators gens(const std::string& json) { return make_generators(load_algebra_json(json)); }

}  // namespace

TEST(Quotient, MonomialStar) {
  ModeWord w{{0, -1}, {1, -2}};
  EXPECT_EQ(monomial_star(w), (ModeWord{{1, 4}, {0, 3}}));
  EXPECT_EQ(monomial_star(ModeWord{{0, -1}}), (ModeWord{{0, 3}}));
  for (auto& u : spanning_words(2, 6)) EXPECT_EQ(monomial_star(monomial_star(u)), u);
}

TEST(Quotient, SpanningWordsCount) {
  // compositions of d into parts >= 2, times ngen^parts
  EXPECT_EQ(spanning_words(1, 6).size(), 5u);
  EXPECT_EQ(spanning_words(2, 4).size(), 6u);
  EXPECT_EQ(spanning_words(3, 0).size(), 1u);
}

TEST(Quotient, FormOnGeneratorsIsTheInputForm) {
  auto G = gens(oracle::example2_json());
  auto T = build_tower(G, 3);
  auto chi = canonical_character(T);
  EXPECT_TRUE(check_character(chi).ok());
  EXPECT_EQ(chi_value(chi, {}), Rat(1));
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b) EXPECT_EQ(pairing(chi, {{a, -1}}, {{b, -1}}), G.form[a][b]);
}

TEST(Quotient, VirasoroDimsMatchVermaOracle) {
  auto G = gens(oracle::virasoro_json(Rat(10)));
  auto T = build_tower(G, 3);
  auto chi = canonical_character(T);
  EXPECT_EQ(pairing(chi, {{0, -1}}, {{0, -1}}), Rat(5));  // c/2
  auto rows = simple_quotient_dims(chi, 5);
  auto want = oracle::virasoro_vacuum_dims(Rat(10), 5);
  ASSERT_EQ(rows.size(), want.size());
  for (size_t d = 0; d < rows.size(); ++d) EXPECT_EQ(rows[d].dim, want[d]) << "d=" << d;
  auto rep = check_quotient(chi, rows);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
}

TEST(Quotient, LeeYangRadicalAtDegreeFour) {
  // c = -22/5: the vacuum module has a singular vector in degree 4
  auto G = gens(oracle::virasoro_json(Rat(-22, 5)));
  auto T = build_tower(G, 3);
  auto chi = canonical_character(T);
  auto rows = simple_quotient_dims(chi, 5);
  auto want = oracle::virasoro_vacuum_dims(Rat(-22, 5), 5);
  EXPECT_EQ(want[4], 1);
  for (size_t d = 0; d < rows.size(); ++d) EXPECT_EQ(rows[d].dim, want[d]) << "d=" << d;
  ASSERT_EQ(rows[4].radical.size(), 1u);
  auto rep = check_quotient(chi, rows);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
}

TEST(Quotient, Example2Gram) {
  auto G = gens(oracle::example2_json());
  auto T = build_tower(G, 4);
  auto chi = canonical_character(T);
  auto rows = simple_quotient_dims(chi, 4);
  EXPECT_EQ(rows[0].dim, 1);
  EXPECT_EQ(rows[1].dim, 0);
  EXPECT_GE(rows[2].dim, 2);
  auto M = gram(chi, spanning_words(G.n, 2));
  EXPECT_EQ(M, G.form);
  auto rep = check_quotient(chi, rows);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
}

TEST(Quotient, NonOmegaBeyondCutoffOverflows) {
  auto G = gens(oracle::example2_json());
  auto T = build_tower(G, 2);
  auto chi = canonical_character(T);
  EXPECT_THROW(chi.function({0, 0, 0}), CutoffOverflow);
  EXPECT_NO_THROW(chi.function({1, 1, 1}));
}

TEST(Quotient, RejectsBadCharacters) {
  auto G = gens(oracle::example2_json());
  auto T = build_tower(G, 3);
  Vec c(T.families.size());
  c[0] = 2;
  EXPECT_THROW(character_from_coefficients(T, c), ValidationError);
  EXPECT_THROW(Character(T, Vec{}), ValidationError);
}

TEST(Quotient, SwapInvariantRadical) {
  auto G = gens(oracle::random_algebra_json(5, 3, true));
  auto T = build_tower(G, 4);
  auto chi = canonical_character(T);
  auto cr = check_character(chi);
  EXPECT_TRUE(cr.ok());
  auto rows = simple_quotient_dims(chi, 4);
  auto rep = check_quotient(chi, rows);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
}
