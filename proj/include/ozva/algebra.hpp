#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ozva/exactlinalg.hpp"

namespace ozva {

// A commutative algebra with a symmetric invariant form, in the basis of
// the input document. prod[i][j][k] = coefficient of a_k in a_i a_j.
// Automorphisms are matrices whose column j is the image of a_j.
struct GriessAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<Vec>> prod;
  Matrix form;
  std::optional<Vec> unit;
  std::vector<Matrix> automorphisms;
  bool nondegenerate = true;

  Vec multiply(const Vec& x, const Vec& y) const;
  Rat pair(const Vec& x, const Vec& y) const;
};

GriessAlgebra load_algebra_json(const std::string& text);
GriessAlgebra load_algebra_file(const std::string& path);
// Re-checks every invariant; throws ValidationError naming the offending triple.
void validate(GriessAlgebra& A);
std::string algebra_to_json(const GriessAlgebra& A);

// The generating set G used by the construction: the input basis, with one
// vector replaced by omega = 2e when a unit is present. Omega is always
// the last generator so that sorted weights carry it in the final slots.
struct Generators {
  int n = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<Vec>> prod;  // in G coordinates
  Matrix form;
  int omega = -1;
  Matrix to_input;    // column g = coordinates of generator g in the input basis
  Matrix from_input;  // inverse
  // Automorphisms in G coordinates (column g = image of generator g).
  std::vector<Matrix> automorphisms;

  bool has_omega() const { return omega >= 0; }
  Vec unit_vector(int g) const;
};

Generators make_generators(const GriessAlgebra& A);

// Change of basis: M expressed in G coordinates given an input-basis matrix.
Matrix conjugate_to_generators(const Generators& G, const Matrix& M);

}  // namespace ozva
