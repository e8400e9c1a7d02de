#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ozva/algebra.hpp"
#include "ozva/funspaces.hpp"

namespace ozva {

// Multiset of generator indices, stored sorted. Omega (when present) is the
// largest index, so it sits in the trailing slots.
using Weight = std::vector<int>;

std::string weight_label(const Generators& G, const Weight& w);
std::vector<Weight> weights_up_to(int ngen, int L);
// Adjacent transpositions inside blocks of equal generators.
std::vector<Perm> stabilizer_generators(const Weight& w);

// Linear combination of generator tuples (a tensor expanded over G).
struct TensorTerm {
  std::vector<int> slots;
  Rat coef;
};
using Tensor = std::vector<TensorTerm>;

// r^(1)_{ij} (k = 1): the product a_i a_j takes the place of slot j and slot
// i is dropped, matching the variable that survives in rho_{ij}.
// r^(3)_{ij} (k = 3): <a_i, a_j> times the tuple without slots i and j.
Tensor r_map(const Generators& G, const std::vector<int>& tuple, int i, int j, int k);

// Variable s of the canonical (sorted) function goes to slot map[s] of tuple.
std::vector<int> canonical_placement(const std::vector<int>& tuple);

// Correlation function with omega in the last slot, from lower-length data:
// alpha = T E phi(a_1..a_{l-1}) + sum_i <omega, a_i> (z_i - z_l)^{-4} phi(a without i, l).
RatFun evir_function(const Generators& G, const std::vector<int>& tuple,
                     const std::function<RatFun(const std::vector<int>&)>& phi);

// A linear functional on B_0^(L), recorded through its correlation
// functions phi(f, lambda) on every canonical weight of length <= L.
struct Family {
  int level = 0;  // length at which the functional first becomes nonzero
  std::vector<RatFun> alpha;
};

class Tower {
 public:
  Generators G;
  int L = 0;
  std::vector<Weight> weights;
  std::vector<Family> families;  // a basis of the dual of B_0^(L)
  std::vector<FunSpace> omega0;  // per weight: Omega_0^lambda

  int weight_index(const Weight& w) const;  // CutoffOverflow when |w| > L
  const RatFun& alpha(int f, const Weight& w) const { return families[f].alpha[weight_index(w)]; }
  RatFun phi(int f, const std::vector<int>& tuple) const;
  RatFun phi(int f, const Tensor& t, int nvars) const;
  int dim_B0(int l) const;
  const FunSpace& omega0_of(const Weight& w) const { return omega0[weight_index(w)]; }

 private:
  std::map<Weight, int> index_;
  friend Tower build_tower(const Generators&, int);
  friend Tower assemble_tower(const Generators&, int, std::vector<Family>);
};

Tower build_tower(const Generators& G, int L);
// Rebuild the derived tables from stored families (state reload).
Tower assemble_tower(const Generators& G, int L, std::vector<Family> families);

// rho-data required of a weight-lambda function by a functional given as
// phi: ((i, j, -2 or -4) -> function of l-1 variables).
PoleData required_poles(const Generators& G, const Weight& w,
                        const std::function<RatFun(const std::vector<int>&)>& phi);

struct TowerCheck {
  int attempted = 0;
  std::vector<std::string> failures;
};
// (rhophi), Gamma-symmetry, admissibility and the omega formula on every
// stored function.
TowerCheck check_tower(const Tower& T);

// Rank test for the multiplication Sym^2 X -> X^2 of the weight-graded
// degree-zero algebra on weights of the given length: the coproduct of
// Omega_0^nu onto the symmetric tensors must have full rank.
struct RankRow {
  Weight nu;
  int sym_dim = 0;
  int rank = 0;
};
std::vector<RankRow> polynomiality_rank_test(const Tower& T, int length);

// pi(S) for a bipartite 4-regular graph (edges on vertices 0..n-1), s = -1
// on edges, symmetrized over the automorphisms of the bipartition's colour
// classes. Throws ValidationError unless the graph is bipartite, 4-regular
// and stays connected after removing any two edges.
RatFun graph_generator(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace ozva
