#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ozva/poly.hpp"

namespace ozva {

// Index of the unordered pair {i,j} (0-based, i<j) among n variables.
inline int pair_index(int i, int j, int n) { return i * n - i * (i + 1) / 2 + (j - i - 1); }
inline int num_pairs(int n) { return n * (n - 1) / 2; }

// p(z) * prod_{i<j} (z_i - z_j)^{k_ij} with p a Laurent polynomial coprime to
// every z_i - z_j. Variables are 0-based internally and 1-based in text.
class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(int n) : n_(n), k_(num_pairs(n), 0) {}
  RatFun(int n, Poly num, std::vector<int> k);  // normalizes

  static RatFun constant(int n, const Rat& c);
  static RatFun diag_power(int n, int i, int j, int k);
  static RatFun from_poly(int n, Poly p) { return RatFun(n, std::move(p), std::vector<int>(num_pairs(n), 0)); }

  int nvars() const { return n_; }
  const Poly& numerator() const { return num_; }
  const std::vector<int>& diags() const { return k_; }
  // Exponent of (z_i - z_j); i != j in either order.
  int diag(int i, int j) const;
  bool is_zero() const { return num_.is_zero(); }
  std::optional<int> degree() const;

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator-() const;
  RatFun operator*(const RatFun& o) const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun scaled(const Rat& c) const;
  bool operator==(const RatFun& o) const { return n_ == o.n_ && k_ == o.k_ && num_ == o.num_; }

  // Numerator over a prescribed lower bound K of diagonal exponents
  // (K_p <= k_p for all pairs); used for coordinates.
  Poly numerator_over(const std::vector<int>& K) const;

  Rat eval(const std::vector<Rat>& pt) const;

  std::string to_string() const;
  static RatFun parse(std::string_view s);

 private:
  int n_ = 0;
  Poly num_;
  std::vector<int> k_;
  void normalize();
};

struct Partition {
  std::vector<int> I, J;  // 0-based slots
  uint32_t jmask() const {
    uint32_t m = 0;
    for (int j : J) m |= 1u << j;
    return m;
  }
};

int order_at(const RatFun& a, int i, int j);

// (sigma a)(z_0..z_{n-1}) = a(z_{sigma(0)}, .., z_{sigma(n-1)}).
RatFun permute(const RatFun& a, const std::vector<int>& sigma);
// Variable v of a becomes variable map[v] of an n-variable function.
RatFun relabel(const RatFun& a, int n, const std::vector<int>& map);
// Append variables up to n.
RatFun extend_vars(const RatFun& a, int n);

// Coefficient of (z_i - z_j)^k in the expansion at z_i = z_j, i < j;
// slot i removed from the result.
RatFun rho_coefficient(const RatFun& a, int i, int j, int k);

// Coefficient of t^m in a(z_I, t z_J); cross pairs dropped from the diagonal.
RatFun scale_coefficient(const RatFun& a, uint32_t jmask, int m);
// Degree-n component for the partition, m = n - sum_{j in J} w_j.
RatFun component(const RatFun& a, const Partition& P, int n, const std::vector<int>& w);
// Factorization of a component as sum of products (I-factor, J-factor);
// factors are functions of |I| and |J| variables in increasing slot order.
std::vector<std::pair<RatFun, RatFun>> split_function(const RatFun& c, const Partition& P);
std::vector<std::pair<RatFun, RatFun>> split_component(const RatFun& a, const Partition& P, int n,
                                                       const std::vector<int>& w);
// Product of f on the I slots and g on the J slots.
RatFun join(const RatFun& f, const RatFun& g, const Partition& P);

RatFun partial(const RatFun& a, int i);
RatFun apply_delta(const RatFun& a);
RatFun apply_delta_star(const RatFun& a, const std::vector<int>& n);
RatFun involution(const RatFun& a, const std::vector<int>& w);
RatFun te_operator(const RatFun& beta);
RatFun pi_product(const std::vector<std::vector<int>>& S);

// Expansion at z_v = infinity with the other variables small: the
// coefficient of z_v^e, a function of the remaining variables.
RatFun coeff_at_infinity(const RatFun& a, int v, int e);
// a(z_I + z, z_J) expanded at z = infinity: the coefficient of z^e.
RatFun shift_coefficient(const RatFun& a, uint32_t imask, int e);

// Nested coefficient: extract e[order[0]] at infinity from variable
// order[0] (outermost), then order[1], ...; returns a scalar.
Rat nested_coefficient(const RatFun& a, const std::vector<int>& order, const std::vector<int>& e);

}  // namespace ozva

#include <ostream>
namespace ozva {
inline std::ostream& operator<<(std::ostream& os, const RatFun& a) { return os << a.to_string(); }
}  // namespace ozva
