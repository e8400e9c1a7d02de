#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ozva/axioms.hpp"

namespace ozva {

// An algebra homomorphism B_0 -> k, stored as coefficients over the family
// basis of the dual of B_0^(L) together with its correlation functions.
class Character {
 public:
  Character(const Tower& T, Vec coef);

  const Tower& tower() const { return *T_; }
  const Vec& coefficients() const { return coef_; }
  // Correlation function on a sorted weight. Past the cutoff L a weight
  // containing omega is continued with the Virasoro formula; any other
  // weight raises CutoffOverflow.
  RatFun function(const Weight& w) const;
  RatFun phi(const std::vector<int>& tuple) const;

 private:
  const Tower* T_;
  Vec coef_;
  struct Memo {
    std::mutex mu;
    std::map<Weight, RatFun> fn;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

// chi(1) = 1, multiplicative; on each length the component along the
// indecomposable directions is chosen orthogonal to them in the coefficient
// inner product of the numerators (so it is fixed by every signed
// permutation of generators that preserves the input).
Character canonical_character(const Tower& T);
// User-supplied coefficients; ValidationError unless chi(1) = 1 and
// multiplicativity holds in cutoff.
Character character_from_coefficients(const Tower& T, const Vec& coef);
CheckReport check_character(const Character& chi);

// word[0] is the outermost mode: a_1(m_1) a_2(m_2) ... a_k(m_k) 1.
using ModeWord = std::vector<std::pair<int, int>>;
ModeWord monomial_star(const ModeWord& w);
int word_degree(const ModeWord& w);
std::string word_label(const Generators& G, const ModeWord& w);
// All words of negative modes of degree d.
std::vector<ModeWord> spanning_words(int ngen, int d);
// chi(w 1), from the nested expansion of the correlation function.
Rat chi_value(const Character& chi, const ModeWord& w);
Rat pairing(const Character& chi, const ModeWord& u, const ModeWord& w);  // <u 1, w 1>_chi
Matrix gram(const Character& chi, const std::vector<ModeWord>& words);

struct QuotientRow {
  int d = 0;
  int words = 0;  // size of the spanning set
  int dim = 0;    // rank of the Gram matrix = dim of the quotient piece
  std::vector<ModeWord> basis;  // words whose classes form a basis
  std::vector<Vec> radical;     // kernel of the Gram matrix, over the words
};
std::vector<QuotientRow> simple_quotient_dims(const Character& chi, int dmax);

// Gram symmetry, degree orthogonality, radical closed under generator
// modes, non-degeneracy on the chosen basis, automorphism invariance of chi
// and of the radical.
CheckReport check_quotient(const Character& chi, const std::vector<QuotientRow>& rows, const Ranges& r = {});

}  // namespace ozva
