#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ozva/coalgebra.hpp"

using namespace ozva;

namespace {

Generators gens(const std::string& json) { return make_generators(load_algebra_json(json)); }

}  // namespace

TEST(Algebra, LoadsExample2) {
  auto A = load_algebra_json(oracle::example2_json());
  EXPECT_EQ(A.dim, 2);
  EXPECT_TRUE(A.nondegenerate);
  auto G = make_generators(A);
  ASSERT_EQ(G.omega, 1);
  EXPECT_EQ(G.labels[0], "x");
  EXPECT_EQ(G.form[1][1], Rat(1));        // <omega, omega> = 4 <e,e>
  EXPECT_EQ(G.prod[0][0][1], Rat(1));  // x x = 2e = omega
  EXPECT_EQ(G.prod[1][0][0], Rat(2));     // omega x = 2x
  EXPECT_EQ(G.prod[1][1][1], Rat(2));
}

TEST(Algebra, VirasoroFormIsHalfC) {
  auto G = gens(oracle::virasoro_json(Rat(10)));
  EXPECT_EQ(G.form[0][0], Rat(5));
}

TEST(Algebra, RejectsBrokenInputs) {
  EXPECT_THROW(load_algebra_json(R"({"dim":2,"product":[[0,1,["1","0"]],[1,0,["0","1"]]],"form":[]})"), ValidationError);
  // invariance: <aa, b> = 1 but <a, ab> = 0
  EXPECT_THROW(load_algebra_json(R"({"dim":2,"product":[[0,0,["0","1"]]],"form":[[1,1,"1"]]})"), ValidationError);
  EXPECT_THROW(load_algebra_json(R"({"dim":1,"product":[[0,0,["2"]]],"form":[[0,0,"1"]],"unit":["1"]})"), ValidationError);
  EXPECT_THROW(load_algebra_json(R"({"dim":2, "product": [[0,0,["1"]]]})"), ParseError);
  EXPECT_THROW(load_algebra_json("{not json"), ParseError);
  // x x = e with <e,e> = 1/4 and <x,x> = 1/2 breaks <xx, e> = <x, xe>
  EXPECT_THROW(load_algebra_json(R"({"dim":2,"product":[[0,0,["1","0"]],[0,1,["0","1"]],[1,1,["1","0"]]],
    "form":[[0,0,"1/4"],[1,1,"1/2"]],"unit":["1","0"]})"), ValidationError);
}

TEST(Algebra, RandomAlgebrasAreValid) {
  for (unsigned s = 1; s < 6; ++s) {
    EXPECT_NO_THROW(load_algebra_json(oracle::random_algebra_json(s, 3)));
    EXPECT_NO_THROW(load_algebra_json(oracle::random_algebra_json(s, 3, true)));
  }
}

TEST(Coalgebra, RMaps) {
  auto G = gens(oracle::example2_json());
  int x = 0, w = 1;
  auto t = r_map(G, {x, x}, 0, 1, 3);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(t[0].slots.empty());
  EXPECT_EQ(t[0].coef, Rat(1, 2));
  auto b = r_map(G, {x, x, w}, 1, 2, 1);  // x omega = 2x at the omega slot
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].slots, (std::vector<int>{x, x}));
  EXPECT_EQ(b[0].coef, Rat(2));
}

TEST(Coalgebra, VirasoroB0IsOneDimensional) {
  auto G = gens(oracle::virasoro_json(Rat(10)));
  Tower T = build_tower(G, 4);
  EXPECT_EQ(T.dim_B0(4), 1);
  auto chk = check_tower(T);
  EXPECT_TRUE(chk.failures.empty()) << chk.failures.front();
}

TEST(Coalgebra, SmallArityClosedForms) {
  for (auto json : {oracle::example2_json(), oracle::random_algebra_json(7, 3)}) {
    auto G = gens(json);
    Tower T = build_tower(G, 4);
    auto chk = check_tower(T);
    EXPECT_TRUE(chk.failures.empty()) << chk.failures.front();
    for (auto& w : T.weights) {
      if (w.size() > 4) continue;
      EXPECT_EQ(T.alpha(0, w), oracle::small_arity_form(G, w)) << weight_label(G, w);
      // unsorted tuples through phi
      if (w.size() >= 3) {
        std::vector<int> t(w.rbegin(), w.rend());
        EXPECT_EQ(T.phi(0, t), oracle::small_arity_form(G, t));
      }
    }
  }
}

TEST(Coalgebra, LiteralLengthFourDisplayBreaksCompatibility) {
  auto G = gens(oracle::example2_json());
  Tower T = build_tower(G, 3);
  Weight w{0, 0, 0, 0};
  RatFun lit = oracle::small_arity_form(G, w, true);
  auto req = required_poles(G, w, [&](const std::vector<int>& t) { return T.phi(0, t); });
  EXPECT_NE(rho_coefficient(lit, 0, 2, -2), req.at({0, 2, -2}));
  EXPECT_EQ(rho_coefficient(lit, 0, 2, -2), -req.at({0, 2, -2}));
  RatFun fixed = oracle::small_arity_form(G, w);
  for (auto& [key, want] : req) {
    auto [i, j, k] = key;
    EXPECT_EQ(rho_coefficient(fixed, i, j, k), want);
  }
}

TEST(Coalgebra, DimensionBookkeeping) {
  // B_0 grows by the part of Omega_0^lambda with vanishing rho-data.
  auto G = gens(oracle::random_algebra_json(3, 3));
  Tower T = build_tower(G, 4);
  for (int l = 2; l <= 4; ++l) {
    int growth = 0;
    for (auto& w : T.weights) {
      if (static_cast<int>(w.size()) != l) continue;
      const FunSpace& S = T.omega0_of(w);
      FunEquations eq(S.dim());
      for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
          for (int k : {-2, -4}) {
            std::vector<RatFun> v;
            for (auto& b : S.basis()) v.push_back(rho_coefficient(b, i, j, k));
            eq.add_block(v);
          }
      growth += S.dim() - eq.rank();
    }
    EXPECT_EQ(T.dim_B0(l) - T.dim_B0(l - 1), growth) << l;
  }
}

TEST(Coalgebra, GeneratorOfLengthTwo) {
  // dim B_0^(2) restricted to weight a+b: one functional iff <a,b> != 0
  auto G = gens(oracle::zero_product_json());
  Tower T = build_tower(G, 2);
  EXPECT_EQ(T.omega0_of({0, 0}).dim(), 1);
  EXPECT_EQ(T.omega0_of({0, 1}).dim(), 0);
  EXPECT_EQ(T.dim_B0(2), 1);
}

TEST(Coalgebra, RankTestLengthFour) {
  for (auto json : {oracle::zero_product_json(), oracle::random_algebra_json(5, 3)}) {
    auto G = gens(json);
    Tower T = build_tower(G, 4);
    for (auto& row : polynomiality_rank_test(T, 4)) EXPECT_EQ(row.rank, row.sym_dim) << weight_label(G, row.nu);
  }
}

TEST(Coalgebra, GraphGenerator) {
  std::vector<std::pair<int, int>> k44;
  for (int u = 0; u < 4; ++u)
    for (int v = 4; v < 8; ++v) k44.emplace_back(u, v);
  RatFun f = graph_generator(8, k44);
  EXPECT_FALSE(f.is_zero());
  EXPECT_TRUE(apply_delta_star(f, std::vector<int>(8, 4)).is_zero());
  // a 4-regular bipartite graph made of two K_{4,4} pieces joined by two edge swaps
  std::vector<std::pair<int, int>> two;
  for (int base : {0, 8})
    for (int u = 0; u < 4; ++u)
      for (int v = 4; v < 8; ++v) two.emplace_back(base + u, base + v);
  // swap (0,4),(8,12) -> (0,12),(8,4)
  for (auto& e : two) {
    if (e == std::make_pair(0, 4)) e = {0, 12};
    else if (e == std::make_pair(8, 12)) e = {8, 4};
  }
  EXPECT_THROW(graph_generator(16, two), ValidationError);
  EXPECT_THROW(graph_generator(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), ValidationError);
}
