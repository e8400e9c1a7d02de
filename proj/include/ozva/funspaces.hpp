#pragma once

#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ozva/exactlinalg.hpp"
#include "ozva/ratfun.hpp"

namespace ozva {

using IntMat = std::vector<std::vector<int>>;
using Perm = std::vector<int>;
using SetPartition = std::vector<std::vector<int>>;  // blocks sorted, each block sorted

struct RegularMatrixSet {
  int l = 0;
  std::vector<int> n;
  int bound = 0;
  std::vector<IntMat> matrices;
};

RegularMatrixSet enumerate_regular_matrices(int l, const std::vector<int>& n, int bound);

enum class SpaceKind { Regular, Admissible, Indecomposable, SimplePole, SimplePoleIndecomposable, OrdBounded, Span };
std::string to_string(SpaceKind k);
SpaceKind parse_space_kind(const std::string& s);

// Finite-dimensional space of RatFuns in l variables. Coordinates come from
// numerator coefficients over a shared diagonal bound K.
class FunSpace {
 public:
  FunSpace() = default;
  // Basis must be linearly independent.
  FunSpace(int l, SpaceKind kind, std::vector<RatFun> basis);
  // Echelon basis of the span of the given functions (independent of order).
  static FunSpace echelon_span(int l, SpaceKind kind, const std::vector<RatFun>& fs);

  int l() const { return l_; }
  SpaceKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<RatFun>& basis() const { return basis_; }

  std::optional<Vec> coords(const RatFun& a) const;
  bool contains(const RatFun& a) const { return coords(a).has_value(); }
  // A linear extension of coords to functions outside the span (monomials
  // unknown to the index count as zero). Used for tensor coordinates, where
  // only the sum of the split pieces is known to lie in the span.
  Vec project(const RatFun& a) const;
  // Same, for a numerator already written over pole_bound().
  Vec project_numerator(const Poly& num) const;
  const std::vector<int>& pole_bound() const { return K_; }
  RatFun combine(const Vec& c) const;

 private:
  int l_ = 0;
  SpaceKind kind_ = SpaceKind::Span;
  std::vector<RatFun> basis_;
  std::vector<int> K_;
  std::unordered_map<Mono, int, MonoHash> index_;
  Echelon ech_;  // rows: [numerator coords | basis combination]
  void build_index();
};

// Accumulates linear equations sum_c x_c f_c = g, one block of RatFuns at a
// time, reduced on the fly.
class FunEquations {
 public:
  explicit FunEquations(int ncols) : ncols_(ncols), ech_(ncols + 1) {}
  void add_block(const std::vector<RatFun>& values, const RatFun* rhs = nullptr);
  Subspace kernel() const;        // homogeneous solutions
  std::optional<Vec> solve() const;  // one solution with free variables zero
  int rank() const { return ech_.rank(); }

 private:
  int ncols_;
  Echelon ech_;
};

const FunSpace& space_basis(int l, SpaceKind kind);
// p(z) * prod (z_i - z_j)^bound with p homogeneous, total degree `degree`.
FunSpace ord_bounded_space(int l, int degree, int bound);
// The pi(S) functions chosen as a basis of the regular span (cached).
const std::vector<IntMat>& regular_basis_matrices(int l);

std::vector<Perm> group_closure(const std::vector<Perm>& gens, int l);
std::vector<Perm> all_permutations(int l);
FunSpace symmetrize(const FunSpace& s, const std::vector<Perm>& gens);

bool is_regular(const RatFun& a, const std::vector<int>& n);

struct AdmissibilityReport {
  bool ok = true;
  std::string reason;
};
// Regularity, degree -2l and vanishing of components in degrees < 0 and 1
// (and 0 for proper partitions when indecomposable is requested).
AdmissibilityReport admissibility(const RatFun& a, bool indecomposable);

std::vector<Partition> ordered_partitions(int l);  // I, J nonempty
std::vector<SetPartition> set_partitions(int l);
// Proper unordered 2-partitions sorted by the order used in the factorization proof.
std::vector<std::pair<std::vector<int>, std::vector<int>>> unordered_two_partitions(int l);
// Degree-0 component with respect to a multi-block partition (weights 2).
RatFun component0(const RatFun& a, const SetPartition& P);

struct FactorTerm {
  Rat coef;
  // (support slots, index into the echelon basis of R_0^{|support|})
  std::vector<std::pair<std::vector<int>, int>> factors;
};
std::vector<FactorTerm> factor_indecomposables(const RatFun& a);
RatFun reassemble(const std::vector<FactorTerm>& terms, int l);

using PoleData = std::map<std::tuple<int, int, int>, RatFun>;  // (i, j, k), 0-based i<j
PoleData extract_poles(const RatFun& a);
RatFun prescribe_poles(int l, const PoleData& data);

// Sum over partitions with at least two blocks of (-1)^{|P|}(|P|-1)! alpha(P).
RatFun reconstruct_from_parts(int l, const std::vector<std::pair<SetPartition, RatFun>>& comps);

// Minimal split of a function without cross poles: sum_k A_k(z_I) B_k(z_J)
// with the B_k linearly independent.
std::vector<std::pair<RatFun, RatFun>> split_minimal(const RatFun& c, const Partition& P);

}  // namespace ozva
