#pragma once

#include <optional>
#include <vector>

#include "ozva/rat.hpp"

namespace ozva {

using Vec = std::vector<Rat>;
using Matrix = std::vector<Vec>;  // row-major

bool is_zero(const Vec& v);

// Reduced row echelon basis, grown one vector at a time. Rows stay sorted by
// pivot column and fully reduced, so the basis is canonical for the span.
class Echelon {
 public:
  Echelon() = default;
  explicit Echelon(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return is_zero(reduce(v)); }
  bool insert(Vec v);
  // c with v = sum_r c_r rows[r], or nullopt if v is outside the span.
  std::optional<Vec> coords(const Vec& v) const;

 private:
  int dim_ = 0;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

using Subspace = Echelon;

// Fraction-free echelon over the integers (rows divided by their content),
// used where only independence and membership are needed.
class IntEchelon {
 public:
  explicit IntEchelon(int dim) : dim_(dim) {}
  int rank() const { return static_cast<int>(rows_.size()); }
  // Returns true and stores v if it is independent of the current rows.
  bool insert(std::vector<Int> v);
  bool contains(std::vector<Int> v) const;

 private:
  int dim_;
  std::vector<std::vector<Int>> rows_;
  std::vector<int> piv_;
  void reduce(std::vector<Int>& v) const;
};

struct RrefResult {
  int rank = 0;
  Matrix rref;          // nonzero rows
  std::vector<int> pivots;
  Subspace kernel;
};

// Fraction-free elimination on the integer-scaled rows, then pivots
// normalized to one.
RrefResult rref_kernel(const Matrix& M, int cols);
Subspace kernel(const Matrix& M, int cols);
Subspace span(const std::vector<Vec>& vs, int dim);

// {x : M x in target}; M has target.dim() rows and `cols` columns.
Subspace solve_preimage(const Matrix& M, int cols, const Subspace& target);

enum class Combine { Intersect, Sum, QuotientBasis };
// QuotientBasis returns an echelon of representatives of A / (A ∩ B).
Subspace subspace_combine(const Subspace& A, const Subspace& B, Combine op);

Vec mat_vec(const Matrix& M, const Vec& x);
Matrix transpose(const Matrix& M, int cols);
// Inverse of a square matrix; nullopt if singular.
std::optional<Matrix> inverse(const Matrix& M);
int rank(const Matrix& M, int cols);

}  // namespace ozva
