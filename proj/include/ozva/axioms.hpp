#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ozva/vertexbuild.hpp"

namespace ozva {

struct CheckReport {
  std::string suite;
  int attempted = 0;
  int passed = 0;
  int skipped = 0;  // some term outside the cutoffs; not counted as attempted
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void record(bool good, const std::string& witness);
  void merge(const CheckReport& o);
};

// Sum of states living in possibly different graded pieces.
class Elem {
 public:
  Elem() = default;
  Elem(const StateVec& s) { add(s); }  // NOLINT(implicit)
  void add(const StateVec& s, const Rat& c = Rat(1));
  void add(const Elem& e, const Rat& c = Rat(1));
  const std::map<std::pair<Weight, int>, Vec>& parts() const { return parts_; }
  std::vector<StateVec> states() const;
  bool is_zero() const { return parts_.empty(); }
  std::string to_string() const;
  // Largest weight length of any state that went in, zero ones included:
  // a vanishing truncated piece still limits which words can test it.
  int length() const { return len_; }
  void set_length(int l) { len_ = std::max(len_, l); }

 private:
  std::map<std::pair<Weight, int>, Vec> parts_;  // zero parts removed
  int len_ = 0;
};

Elem act(const VertexTruncation& V, int g, int n, const Elem& e);
Elem product(const VertexTruncation& V, const Elem& u, int n, const Elem& w);
Elem Dpow(const VertexTruncation& V, const Elem& e, int k);  // D^k / k!

// Equality in the weight-glued algebra B: every word of generator modes of
// length <= budget that brings a state to degree 0 is applied, and the
// result is paired with all stored functionals. budget defaults to the
// largest length that keeps every part in cutoff.
using Word = std::vector<std::pair<int, int>>;  // (generator, mode), applied last-to-first
using Signature = std::map<Word, Vec>;
Signature signature(const VertexTruncation& V, const Elem& e, int budget);
int default_budget(const VertexTruncation& V, const Elem& a, const Elem& b);
// nullopt when no word fits the cutoffs (instance is skipped); else equality.
std::optional<bool> equal_in_B(const VertexTruncation& V, const Elem& a, const Elem& b);

struct Ranges {
  int nmin = -4;
  int nmax = 6;
};

// Unit, creation, (V3), (adDst) and the sl2 relations in the weight-graded
// algebra.
CheckReport check_unit_translation(const VertexTruncation& V, const Ranges& r = {});
// (V4), quasi-symmetry and associativity.
CheckReport check_commutator(const VertexTruncation& V, const Ranges& r = {});
// Virasoro relations for omega; ValidationError if there is no omega.
CheckReport check_virasoro(const VertexTruncation& V);
// a(1)b = ab, a(3)b = <a,b>, symmetry and invariance, all in B.
CheckReport check_griess(const VertexTruncation& V);
CheckReport check_b0_polynomiality(const Tower& T, int max_length);
// Transport of the action tables along each automorphism that is monomial in
// the generator basis (others are skipped).
CheckReport check_equivariance(const VertexTruncation& V, const Ranges& r = {});

// Automorphism as signed permutation of generators, if it is one.
struct SignedPerm {
  std::vector<int> perm;
  std::vector<Rat> sign;
};
std::optional<SignedPerm> as_signed_perm(const Matrix& M);
// Matrix of sigma: V^lambda_d -> V^{sigma lambda}_d; throws ValidationError
// when the layer is not carried onto its image.
Matrix transport_matrix(const VertexTruncation& V, const SignedPerm& s, const Weight& w, int d);
Weight apply_perm(const SignedPerm& s, const Weight& w);

}  // namespace ozva
