#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <tuple>
#include <vector>

#include "ozva/coalgebra.hpp"

namespace ozva {

struct StateVec {
  Weight w;
  int d = 0;
  Vec c;

  bool is_zero() const { return ozva::is_zero(c); }
  StateVec scaled(const Rat& s) const;
};
StateVec operator+(const StateVec& a, const StateVec& b);
StateVec operator-(const StateVec& a, const StateVec& b);
bool operator==(const StateVec& a, const StateVec& b);
std::string to_string(const StateVec& s);
inline void PrintTo(const StateVec& s, std::ostream* os) { *os << to_string(s); }

// Truncation of the weight-graded vertex algebra: V^lambda_d is the dual of
// Omega^lambda_d, the span of the degree-d J-factors of phi(f, mu + lambda)
// over all companions mu with |mu| + |lambda| <= L. The dual basis of a
// piece is the echelon basis of its function space.
class VertexTruncation {
 public:
  VertexTruncation(const Tower& T, int D);
  // Reload path: layers given explicitly (they are recomputable, but the
  // state directory stores them so a reload does not depend on the build).
  VertexTruncation(const Tower& T, int D, std::map<std::pair<Weight, int>, FunSpace> layers);

  const Tower& tower() const { return *T_; }
  int L() const { return T_->L; }
  int D() const { return D_; }
  // Layers with d < 0 or d = 1 are zero; beyond the cutoffs CutoffOverflow.
  const FunSpace& layer(const Weight& w, int d) const;
  int dim(const Weight& w, int d) const { return layer(w, d).dim(); }
  const std::map<std::pair<Weight, int>, FunSpace>& layers() const { return layers_; }

  StateVec zero(const Weight& w, int d) const;
  StateVec unit() const;
  StateVec generator(int g) const;  // zero if Omega^g_2 is empty
  // Input-algebra element (G coordinates) as a sum of generator states.
  std::vector<StateVec> element(const Vec& coords) const;

  StateVec act(int g, int n, const StateVec& u) const;
  StateVec product(const StateVec& u, int n, const StateVec& w) const;
  StateVec Dop(const StateVec& u) const;
  StateVec Dstar(const StateVec& u) const;
  StateVec delta(const StateVec& u) const { return u.scaled(Rat(u.d)); }

  // Pairing of a degree-0 state with every stored functional f: the image
  // of the state in B_0 (coordinates dual to the family basis).
  Vec functional_values(const StateVec& s) const;

  Matrix action_matrix(int g, int n, const Weight& w, int d) const;  // memoized
  // Fault injection for the test suites: adds delta to one entry of a
  // generator action table.
  void corrupt_action(int g, int n, const Weight& w, int d, int row, int col, const Rat& delta);

 private:
  const Tower* T_;
  int D_;
  std::map<std::pair<Weight, int>, FunSpace> layers_;
  FunSpace empty0_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, Weight, int>, Matrix> act_memo_;
  mutable std::map<std::tuple<Weight, int, int, Weight, int>, std::vector<Matrix>> prod_memo_;
  void check_cutoff(const Weight& w, int d) const;
  const std::vector<Matrix>& product_tensor(const Weight& lw, int d1, int n, const Weight& mw, int d2) const;
};

// Degree-d J-factors of phi(f, mu ++ lambda), J = the lambda slots.
std::vector<RatFun> layer_generators(const Tower& T, const Weight& lambda, int d);

}  // namespace ozva
