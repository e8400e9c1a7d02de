#include "ozva/exactlinalg.hpp"

#include <algorithm>

namespace ozva {

bool is_zero(const Vec& v) {
  for (auto& x : v)
    if (x != 0) return false;
  return true;
}

Vec Echelon::reduce(Vec v) const {
  Rat c;
  for (size_t r = 0; r < rows_.size(); ++r) {
    if (v[piv_[r]] == 0) continue;
    c = v[piv_[r]];
    const Vec& row = rows_[r];
    for (int k = piv_[r]; k < dim_; ++k)
      if (row[k] != 0) v[k] -= c * row[k];
  }
  return v;
}

bool Echelon::insert(Vec v) {
  if (static_cast<int>(v.size()) != dim_) throw ValidationError("Echelon: dimension mismatch");
  v = reduce(std::move(v));
  int p = 0;
  while (p < dim_ && v[p] == 0) ++p;
  if (p == dim_) return false;
  Rat inv = 1 / v[p];
  for (int k = p; k < dim_; ++k)
    if (v[k] != 0) v[k] *= inv;
  Rat c;
  for (auto& row : rows_) {
    if (row[p] == 0) continue;
    c = row[p];
    for (int k = p; k < dim_; ++k)
      if (v[k] != 0) row[k] -= c * v[k];
  }
  auto it = std::lower_bound(piv_.begin(), piv_.end(), p);
  size_t pos = it - piv_.begin();
  piv_.insert(it, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

std::optional<Vec> Echelon::coords(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c(rows_.size());
  for (size_t r = 0; r < rows_.size(); ++r) c[r] = v[piv_[r]];
  return c;
}

void IntEchelon::reduce(std::vector<Int>& v) const {
  Int g, a, b;
  for (size_t r = 0; r < rows_.size(); ++r) {
    int p = piv_[r];
    if (v[p] == 0) continue;
    const auto& row = rows_[r];
    g = gcd(row[p], v[p]);
    a = row[p] / g;
    b = v[p] / g;
    for (int k = 0; k < dim_; ++k) {
      if (v[k] != 0) v[k] *= a;
      if (row[k] != 0) v[k] -= b * row[k];
    }
    Int content = 0;
    for (auto& x : v)
      if (x != 0) {
        content = gcd(content, x);
        if (content == 1) break;
      }
    if (content > 1)
      for (auto& x : v)
        if (x != 0) x /= content;
  }
}

bool IntEchelon::insert(std::vector<Int> v) {
  reduce(v);
  int p = 0;
  while (p < dim_ && v[p] == 0) ++p;
  if (p == dim_) return false;
  rows_.push_back(std::move(v));
  piv_.push_back(p);
  return true;
}

bool IntEchelon::contains(std::vector<Int> v) const {
  reduce(v);
  for (auto& x : v)
    if (x != 0) return false;
  return true;
}

RrefResult rref_kernel(const Matrix& M, int cols) {
  // Scale each row to a primitive integer vector and eliminate fraction-free.
  std::vector<std::vector<Int>> A;
  for (auto& row : M) {
    Int l = 1;
    for (auto& x : row) l = lcm(l, Int(x.get_den()));
    std::vector<Int> r(cols);
    bool nz = false;
    for (int k = 0; k < cols; ++k) {
      r[k] = Int(row[k] * l);
      nz |= r[k] != 0;
    }
    if (nz) A.push_back(std::move(r));
  }
  std::vector<int> piv;
  size_t rank = 0;
  Int g, a, b;
  for (int c = 0; c < cols && rank < A.size(); ++c) {
    size_t sel = A.size();
    for (size_t r = rank; r < A.size(); ++r)
      if (A[r][c] != 0 && (sel == A.size() || abs(A[r][c]) < abs(A[sel][c]))) sel = r;
    if (sel == A.size()) continue;
    std::swap(A[rank], A[sel]);
    for (size_t r = 0; r < A.size(); ++r) {
      if (r == rank || A[r][c] == 0) continue;
      g = gcd(A[rank][c], A[r][c]);
      a = A[rank][c] / g;
      b = A[r][c] / g;
      Int content = 0;
      for (int k = 0; k < cols; ++k) {
        A[r][k] = a * A[r][k] - b * A[rank][k];
        if (A[r][k] != 0) content = gcd(content, A[r][k]);
      }
      if (content > 1)
        for (auto& x : A[r]) x /= content;
    }
    piv.push_back(c);
    ++rank;
  }
  RrefResult res;
  res.rank = static_cast<int>(rank);
  res.pivots = piv;
  for (size_t r = 0; r < rank; ++r) {
    Vec row(cols);
    for (int k = 0; k < cols; ++k) row[k] = Rat(A[r][k], A[r][piv[r]]);
    for (auto& x : row) x.canonicalize();
    res.rref.push_back(std::move(row));
  }
  res.kernel = Subspace(cols);
  std::vector<bool> is_piv(cols, false);
  for (int p : piv) is_piv[p] = true;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    Vec v(cols);
    v[f] = 1;
    for (size_t r = 0; r < rank; ++r) v[piv[r]] = -res.rref[r][f];
    res.kernel.insert(std::move(v));
  }
  return res;
}

Subspace kernel(const Matrix& M, int cols) { return rref_kernel(M, cols).kernel; }

Subspace span(const std::vector<Vec>& vs, int dim) {
  Subspace s(dim);
  for (auto& v : vs) s.insert(v);
  return s;
}

Vec mat_vec(const Matrix& M, const Vec& x) {
  Vec y(M.size());
  for (size_t r = 0; r < M.size(); ++r)
    for (size_t k = 0; k < x.size(); ++k)
      if (x[k] != 0 && M[r][k] != 0) y[r] += M[r][k] * x[k];
  return y;
}

Matrix transpose(const Matrix& M, int cols) {
  Matrix T(cols, Vec(M.size()));
  for (size_t r = 0; r < M.size(); ++r)
    for (int c = 0; c < cols; ++c) T[c][r] = M[r][c];
  return T;
}

Subspace solve_preimage(const Matrix& M, int cols, const Subspace& target) {
  if (static_cast<int>(M.size()) != target.dim()) throw ValidationError("solve_preimage: dimension mismatch");
  // Annihilator of the target, then kernel of (annihilator * M).
  Subspace ann = kernel(target.rows(), target.dim());
  Matrix AM;
  for (auto& y : ann.rows()) {
    Vec row(cols);
    for (int r = 0; r < target.dim(); ++r) {
      if (y[r] == 0) continue;
      for (int c = 0; c < cols; ++c)
        if (M[r][c] != 0) row[c] += y[r] * M[r][c];
    }
    AM.push_back(std::move(row));
  }
  return kernel(AM, cols);
}

Subspace subspace_combine(const Subspace& A, const Subspace& B, Combine op) {
  if (A.dim() != B.dim()) throw ValidationError("subspace_combine: ambient mismatch");
  int n = A.dim();
  switch (op) {
    case Combine::Sum: {
      Subspace s = A;
      for (auto& v : B.rows()) s.insert(v);
      return s;
    }
    case Combine::Intersect: {
      // x = sum a_i A_i with x in B: kernel of annihilator(B) applied to A's rows.
      Subspace annB = kernel(B.rows(), n);
      int ka = A.rank();
      Matrix M;
      for (auto& y : annB.rows()) {
        Vec row(ka);
        for (int i = 0; i < ka; ++i)
          for (int k = 0; k < n; ++k)
            if (y[k] != 0 && A.rows()[i][k] != 0) row[i] += y[k] * A.rows()[i][k];
        M.push_back(std::move(row));
      }
      Subspace coeff = kernel(M, ka);
      Subspace out(n);
      for (auto& c : coeff.rows()) {
        Vec x(n);
        for (int i = 0; i < ka; ++i)
          if (c[i] != 0)
            for (int k = 0; k < n; ++k) x[k] += c[i] * A.rows()[i][k];
        out.insert(std::move(x));
      }
      return out;
    }
    case Combine::QuotientBasis: {
      Subspace acc = B;
      Subspace out(n);
      for (auto& v : A.rows())
        if (acc.insert(v)) out.insert(v);
      return out;
    }
  }
  return Subspace(n);
}

std::optional<Matrix> inverse(const Matrix& M) {
  int n = static_cast<int>(M.size());
  Matrix aug(n, Vec(2 * n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug[r][c] = M[r][c];
    aug[r][n + r] = 1;
  }
  auto res = rref_kernel(aug, 2 * n);
  if (res.rank < n || res.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, Vec(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv[r][c] = res.rref[r][n + c];
  return inv;
}

int rank(const Matrix& M, int cols) { return rref_kernel(M, cols).rank; }

}  // namespace ozva
