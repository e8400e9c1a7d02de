#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ozva/rat.hpp"

namespace ozva {

// One slot beyond the largest arity we build (8) is kept free for the
// auxiliary expansion variable used inside ratfun.cpp.
constexpr int kMaxVars = 12;

struct Mono {
  std::array<int16_t, kMaxVars> e{};

  int16_t& operator[](int i) { return e[i]; }
  int16_t operator[](int i) const { return e[i]; }
  auto operator<=>(const Mono&) const = default;
  bool operator==(const Mono&) const = default;

  Mono operator+(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int16_t>(e[i] + o.e[i]);
    return r;
  }
  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
};

struct MonoHash {
  size_t operator()(const Mono& m) const noexcept {
    uint64_t h = 1469598103934665603ULL;
    for (auto x : m.e) {
      h ^= static_cast<uint16_t>(x);
      h *= 1099511628211ULL;
    }
    return static_cast<size_t>(h);
  }
};

// Sparse Laurent polynomial with rational coefficients; terms sorted by
// monomial, no zero coefficients.
class Poly {
 public:
  using Term = std::pair<Mono, Rat>;

  Poly() = default;
  static Poly constant(const Rat& c);
  static Poly monomial(const Mono& m, const Rat& c);
  static Poly variable(int i);
  // (z_i - z_j)^k, k >= 0.
  static Poly diff_pow(int i, int j, int k);
  static Poly from_terms(std::vector<Term> terms);  // merges duplicates

  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly scaled(const Rat& c) const;
  Poly shifted(const Mono& m) const;  // multiply by a monomial
  Poly pow(int k) const;
  bool operator==(const Poly& o) const { return t_ == o.t_; }

  // Min/max exponent of variable i over terms (0,0 for the zero polynomial).
  std::pair<int, int> exponent_range(int i) const;
  // Coefficient of the given monomial.
  Rat coeff(const Mono& m) const;
  Poly derivative(int i) const;
  Rat eval(const std::vector<Rat>& pt) const;

  std::string to_string(int nvars) const;

 private:
  std::vector<Term> t_;
  friend class PolyBuilder;
};

class PolyBuilder {
 public:
  void add(const Mono& m, const Rat& c);
  void add(const Poly& p);
  void add_scaled(const Poly& p, const Rat& c);
  void add_product(const Poly& p, const Poly& q);
  bool empty() const { return acc_.empty(); }
  Poly finish();

 private:
  std::unordered_map<Mono, Rat, MonoHash> acc_;
};

// Cached small binomial coefficients C(n, r), any n, r >= 0.
const Int& binom_cached(int n, int r);

}  // namespace ozva
