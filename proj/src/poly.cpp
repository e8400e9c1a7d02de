#include "ozva/poly.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace ozva {

const Int& binom_cached(int n, int r) {
  thread_local std::unordered_map<int64_t, Int> cache;
  int64_t key = (static_cast<int64_t>(n) << 32) ^ static_cast<uint32_t>(r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, binom(n, r)).first->second;
}

Poly Poly::constant(const Rat& c) { return monomial(Mono{}, c); }

Poly Poly::monomial(const Mono& m, const Rat& c) {
  Poly p;
  if (c != 0) p.t_.emplace_back(m, c);
  return p;
}

Poly Poly::variable(int i) {
  Mono m;
  m[i] = 1;
  return monomial(m, 1);
}

Poly Poly::diff_pow(int i, int j, int k) {
  Poly p;
  for (int r = 0; r <= k; ++r) {
    Mono m;
    m[i] = static_cast<int16_t>(k - r);
    m[j] = static_cast<int16_t>(r);
    Rat c(binom_cached(k, r));
    if (r % 2) c = -c;
    p.t_.emplace_back(m, c);
  }
  std::sort(p.t_.begin(), p.t_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  PolyBuilder b;
  for (auto& [m, c] : terms) b.add(m, c);
  return b.finish();
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
      r.t_.push_back(t_[i++]);
    } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
      r.t_.push_back(o.t_[j++]);
    } else {
      Rat c = t_[i].second + o.t_[j].second;
      if (c != 0) r.t_.emplace_back(t_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.second = -t.second;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (t_.size() == 1 && t_[0].first == Mono{}) return o.scaled(t_[0].second);
  if (o.t_.size() == 1 && o.t_[0].first == Mono{}) return scaled(o.t_[0].second);
  PolyBuilder b;
  b.add_product(*this, o);
  return b.finish();
}

Poly Poly::scaled(const Rat& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  if (c == 1) return r;
  for (auto& t : r.t_) t.second *= c;
  return r;
}

Poly Poly::shifted(const Mono& m) const {
  Poly r = *this;
  for (auto& t : r.t_) t.first = t.first + m;
  return r;  // order preserved under translation
}

Poly Poly::pow(int k) const {
  Poly r = constant(1), base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

std::pair<int, int> Poly::exponent_range(int i) const {
  if (t_.empty()) return {0, 0};
  int lo = t_[0].first[i], hi = lo;
  for (auto& t : t_) {
    lo = std::min<int>(lo, t.first[i]);
    hi = std::max<int>(hi, t.first[i]);
  }
  return {lo, hi};
}

Rat Poly::coeff(const Mono& m) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), m,
                             [](const Term& t, const Mono& x) { return t.first < x; });
  if (it != t_.end() && it->first == m) return it->second;
  return 0;
}

Poly Poly::derivative(int i) const {
  Poly r;
  for (auto& [m, c] : t_) {
    if (m[i] == 0) continue;
    Mono m2 = m;
    m2[i] -= 1;
    r.t_.emplace_back(m2, c * m[i]);
  }
  return r;  // decrementing one coordinate keeps lexicographic order
}

Rat Poly::eval(const std::vector<Rat>& pt) const {
  Rat s = 0;
  for (auto& [m, c] : t_) {
    Rat v = c;
    for (size_t i = 0; i < pt.size(); ++i) {
      int e = m[static_cast<int>(i)];
      if (e == 0) continue;
      Rat p = 1;
      for (int k = 0; k < std::abs(e); ++k) p *= pt[i];
      if (e > 0) v *= p; else v /= p;
    }
    s += v;
  }
  return s;
}

std::string Poly::to_string(int nvars) const {
  if (t_.empty()) return "0";
  std::string out;
  // Descending order reads more naturally.
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += it->second.get_str();
    for (int i = 0; i < nvars; ++i) {
      int e = it->first[i];
      if (e == 0) continue;
      out += "*z" + std::to_string(i + 1);
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

void PolyBuilder::add(const Mono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void PolyBuilder::add(const Poly& p) {
  for (auto& [m, c] : p.terms()) add(m, c);
}

void PolyBuilder::add_scaled(const Poly& p, const Rat& c) {
  if (c == 0) return;
  Rat tmp;
  for (auto& [m, x] : p.terms()) {
    tmp = x * c;
    add(m, tmp);
  }
}

void PolyBuilder::add_product(const Poly& p, const Poly& q) {
  acc_.reserve(acc_.size() + p.size() * q.size() / 2 + 1);
  Rat tmp;
  for (auto& [m1, c1] : p.terms())
    for (auto& [m2, c2] : q.terms()) {
      tmp = c1 * c2;
      add(m1 + m2, tmp);
    }
}

Poly PolyBuilder::finish() {
  Poly r;
  r.t_.reserve(acc_.size());
  for (auto& [m, c] : acc_)
    if (c != 0) r.t_.emplace_back(m, std::move(c));
  std::sort(r.t_.begin(), r.t_.end(),
            [](const Poly::Term& a, const Poly::Term& b) { return a.first < b.first; });
  acc_.clear();
  return r;
}

}  // namespace ozva
