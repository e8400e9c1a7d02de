#include "ozva/ratfun.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ozva {

namespace {

using Series = std::vector<Poly>;  // index = power of the expansion parameter

Series mul_series(const Series& a, const Series& b, int T) {
  std::vector<PolyBuilder> acc(T + 1);
  for (size_t i = 0; i < a.size() && static_cast<int>(i) <= T; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size() && static_cast<int>(i + j) <= T; ++j) {
      if (b[j].is_zero()) continue;
      acc[i + j].add_product(a[i], b[j]);
    }
  }
  Series r(T + 1);
  for (int i = 0; i <= T; ++i) r[i] = acc[i].finish();
  return r;
}

Mono drop_var(const Mono& m, int v) {
  Mono r;
  int k = 0;
  for (int i = 0; i < kMaxVars; ++i)
    if (i != v) r[k++] = m[i];
  return r;
}

bool vanishes_on_diagonal(const Poly& p, int i, int j) {
  PolyBuilder b;
  for (auto& [m, c] : p.terms()) {
    Mono m2 = m;
    m2[j] = static_cast<int16_t>(m2[j] + m2[i]);
    m2[i] = 0;
    b.add(m2, c);
  }
  return b.finish().is_zero();
}

// Exact quotient p / (z_i - z_j); p must vanish on z_i = z_j.
Poly divide_by_diff(const Poly& p, int i, int j) {
  std::map<int, PolyBuilder> byexp;
  for (auto& [m, c] : p.terms()) {
    Mono m2 = m;
    m2[i] = 0;
    byexp[m[i]].add(m2, c);
  }
  std::map<int, Poly> P;
  for (auto& [e, b] : byexp) P[e] = b.finish();
  int lo = P.begin()->first, hi = P.rbegin()->first;
  Mono zj, zi;
  zj[j] = 1;
  PolyBuilder out;
  Poly Q;  // Q_{e-1}
  for (int e = hi; e > lo; --e) {
    auto it = P.find(e);
    Poly next = Q.shifted(zj);
    if (it != P.end()) next += it->second;
    Q = std::move(next);
    Mono sh;
    sh[i] = static_cast<int16_t>(e - 1);
    out.add(Q.shifted(sh));
  }
  return out.finish();
}

bool homogeneous(const Poly& p, int* deg) {
  if (p.is_zero()) return false;
  int d = p.terms()[0].first.degree();
  for (auto& t : p.terms())
    if (t.first.degree() != d) return false;
  *deg = d;
  return true;
}

}  // namespace

RatFun::RatFun(int n, Poly num, std::vector<int> k) : n_(n), num_(std::move(num)), k_(std::move(k)) {
  if (n_ > kMaxVars - 1) throw ValidationError("too many variables");
  if (static_cast<int>(k_.size()) != num_pairs(n_)) throw ValidationError("diagonal exponent count");
  normalize();
}

void RatFun::normalize() {
  if (num_.is_zero()) {
    std::fill(k_.begin(), k_.end(), 0);
    return;
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      int p = pair_index(i, j, n_);
      while (vanishes_on_diagonal(num_, i, j)) {
        num_ = divide_by_diff(num_, i, j);
        ++k_[p];
      }
    }
}

RatFun RatFun::constant(int n, const Rat& c) { return RatFun(n, Poly::constant(c), std::vector<int>(num_pairs(n), 0)); }

RatFun RatFun::diag_power(int n, int i, int j, int k) {
  std::vector<int> kk(num_pairs(n), 0);
  Rat c = 1;
  if (i > j) {
    std::swap(i, j);
    if (k % 2) c = -1;
  }
  kk[pair_index(i, j, n)] = k;
  return RatFun(n, Poly::constant(c), kk);
}

int RatFun::diag(int i, int j) const {
  if (i > j) std::swap(i, j);
  return k_[pair_index(i, j, n_)];
}

std::optional<int> RatFun::degree() const {
  int d;
  if (!homogeneous(num_, &d)) return std::nullopt;
  for (int k : k_) d += k;
  return d;
}

Poly RatFun::numerator_over(const std::vector<int>& K) const {
  Poly p = num_;
  if (p.is_zero()) return p;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      int idx = pair_index(i, j, n_);
      int e = k_[idx] - K[idx];
      if (e < 0) throw ValidationError("numerator_over: pole exceeds bound");
      if (e > 0) p = p * Poly::diff_pow(i, j, e);
    }
  return p;
}

RatFun RatFun::operator+(const RatFun& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (n_ != o.n_) throw ValidationError("RatFun arity mismatch");
  if (k_ == o.k_) return RatFun(n_, num_ + o.num_, k_);
  std::vector<int> K(k_.size());
  for (size_t p = 0; p < K.size(); ++p) K[p] = std::min(k_[p], o.k_[p]);
  return RatFun(n_, numerator_over(K) + o.numerator_over(K), K);
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
  if (n_ != o.n_) throw ValidationError("RatFun arity mismatch");
  if (is_zero() || o.is_zero()) return RatFun(n_);
  RatFun r;
  r.n_ = n_;
  r.num_ = num_ * o.num_;
  r.k_ = k_;
  for (size_t p = 0; p < k_.size(); ++p) r.k_[p] += o.k_[p];
  return r;  // product of numerators coprime to each diagonal stays coprime
}

RatFun RatFun::scaled(const Rat& c) const {
  if (c == 0) return RatFun(n_);
  RatFun r = *this;
  r.num_ = r.num_.scaled(c);
  return r;
}

Rat RatFun::eval(const std::vector<Rat>& pt) const {
  Rat v = num_.eval(pt);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      int k = k_[pair_index(i, j, n_)];
      if (k == 0) continue;
      Rat d = pt[i] - pt[j], p = 1;
      for (int r = 0; r < std::abs(k); ++r) p *= d;
      if (k > 0) v *= p; else v /= p;
    }
  return v;
}

std::string RatFun::to_string() const {
  std::string s = "n=" + std::to_string(n_) + " ; " + num_.to_string(n_) + " ;";
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      int k = k_[pair_index(i, j, n_)];
      if (k != 0) s += " (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k) + ")";
    }
  return s;
}

RatFun RatFun::parse(std::string_view s) {
  auto parts = std::vector<std::string>{};
  {
    std::string cur;
    for (char c : s) {
      if (c == ';') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
  }
  if (parts.size() != 3) throw ParseError("RatFun text needs three ';'-separated fields");
  auto trim = [](std::string x) {
    auto b = x.find_first_not_of(" \t\n");
    auto e = x.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  std::string head = trim(parts[0]);
  if (head.rfind("n=", 0) != 0) throw ParseError("RatFun text must start with n=");
  int n;
  try {
    n = std::stoi(head.substr(2));
  } catch (...) {
    throw ParseError("bad arity in RatFun text");
  }
  if (n < 0 || n >= kMaxVars) throw ParseError("arity out of range");
  PolyBuilder b;
  std::string body = trim(parts[1]);
  if (body != "0") {
    std::stringstream ss(body);
    std::string term;
    while (std::getline(ss, term, '+')) {
      term = trim(term);
      if (term.empty()) throw ParseError("empty term");
      std::stringstream ts(term);
      std::string tok;
      bool first = true;
      Rat c = 1;
      Mono m;
      while (std::getline(ts, tok, '*')) {
        tok = trim(tok);
        if (first && !tok.empty() && tok[0] != 'z') {
          c = parse_rat(tok);
        } else {
          if (tok.size() < 2 || tok[0] != 'z') throw ParseError("bad factor: " + tok);
          auto caret = tok.find('^');
          int v, e = 1;
          try {
            v = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
            if (caret != std::string::npos) e = std::stoi(tok.substr(caret + 1));
          } catch (...) {
            throw ParseError("bad factor: " + tok);
          }
          if (v < 1 || v > n) throw ParseError("variable index out of range: " + tok);
          m[v - 1] = static_cast<int16_t>(m[v - 1] + e);
        }
        first = false;
      }
      b.add(m, c);
    }
  }
  std::vector<int> k(num_pairs(n), 0);
  std::string diag = trim(parts[2]);
  size_t pos = 0;
  while ((pos = diag.find('(', pos)) != std::string::npos) {
    auto close = diag.find(')', pos);
    if (close == std::string::npos) throw ParseError("unclosed diagonal triple");
    int i, j, e;
    if (std::sscanf(diag.substr(pos + 1, close - pos - 1).c_str(), "%d,%d,%d", &i, &j, &e) != 3)
      throw ParseError("bad diagonal triple");
    if (i < 1 || j < 1 || i > n || j > n || i == j) throw ParseError("bad diagonal indices");
    Rat sign = 1;
    if (i > j) {
      std::swap(i, j);
      if (e % 2) sign = -1;
    }
    k[pair_index(i - 1, j - 1, n)] += e;
    if (sign != 1) {
      Poly p = b.finish();
      b.add_scaled(p, sign);
    }
    pos = close + 1;
  }
  return RatFun(n, b.finish(), k);
}

int order_at(const RatFun& a, int i, int j) { return a.diag(i, j); }

RatFun relabel(const RatFun& a, int n, const std::vector<int>& map) {
  int m = a.nvars();
  PolyBuilder b;
  Rat sign = 1;
  std::vector<int> k(num_pairs(n), 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int e = a.diags()[pair_index(i, j, m)];
      if (e == 0) continue;
      int p = map[i], q = map[j];
      if (p > q) {
        std::swap(p, q);
        if (e % 2) sign = -sign;
      }
      k[pair_index(p, q, n)] += e;
    }
  for (auto& [mono, c] : a.numerator().terms()) {
    Mono r;
    for (int i = 0; i < m; ++i) r[map[i]] = static_cast<int16_t>(r[map[i]] + mono[i]);
    b.add(r, c * sign);
  }
  return RatFun(n, b.finish(), k);
}

RatFun permute(const RatFun& a, const std::vector<int>& sigma) { return relabel(a, a.nvars(), sigma); }

RatFun extend_vars(const RatFun& a, int n) {
  std::vector<int> map(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) map[i] = i;
  return relabel(a, n, map);
}

RatFun rho_coefficient(const RatFun& a, int i, int j, int k) {
  int n = a.nvars();
  if (i >= j) throw ValidationError("rho_coefficient needs i<j");
  int T = k - a.diag(i, j);
  if (a.is_zero() || T < 0) return RatFun(n - 1);
  std::vector<PolyBuilder> nb(T + 1);
  for (auto& [m, c] : a.numerator().terms()) {
    int e = m[i];
    Mono base = m;
    base[i] = 0;
    for (int r = 0; r <= T; ++r) {
      if (e >= 0 && r > e) break;
      Mono mm = base;
      mm[j] = static_cast<int16_t>(mm[j] + e - r);
      nb[r].add(mm, c * binom_cached(e, r));
    }
  }
  Series acc(T + 1);
  for (int r = 0; r <= T; ++r) acc[r] = nb[r].finish();
  std::vector<int> newk = a.diags();
  newk[pair_index(i, j, n)] = 0;
  Rat sign = 1;
  for (int m = 0; m < n; ++m) {
    if (m == i || m == j) continue;
    int kk = a.diag(i, m);
    if (kk == 0) continue;
    int s = (m < i) ? sign_pow(kk) : 1;
    Series f(T + 1);
    for (int r = 0; r <= T; ++r) {
      Int c = binom_cached(kk, r) * s;
      if (c != 0) f[r] = Poly::diff_pow(j, m, T - r).scaled(Rat(c));
    }
    acc = mul_series(acc, f, T);
    newk[pair_index(std::min(i, m), std::max(i, m), n)] = 0;
    if (j < m) {
      newk[pair_index(j, m, n)] += kk - T;
    } else {
      newk[pair_index(m, j, n)] += kk - T;
      if ((kk - T) % 2) sign = -sign;
    }
  }
  PolyBuilder out;
  for (auto& [m, c] : acc[T].terms()) out.add(drop_var(m, i), c * sign);
  std::vector<int> k2(num_pairs(n - 1), 0);
  auto idx = [i](int v) { return v < i ? v : v - 1; };
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (p == i || q == i) continue;
      k2[pair_index(idx(p), idx(q), n - 1)] = newk[pair_index(p, q, n)];
    }
  return RatFun(n - 1, out.finish(), k2);
}

RatFun scale_coefficient(const RatFun& a, uint32_t jmask, int m) {
  int n = a.nvars();
  if (a.is_zero()) return RatFun(n);
  auto inJ = [jmask](int v) { return (jmask >> v) & 1u; };
  int KJ = 0;
  std::vector<int> newk = a.diags();
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      int idx = pair_index(p, q, n);
      if (inJ(p) && inJ(q)) KJ += newk[idx];
      if (inJ(p) != inJ(q)) newk[idx] = 0;
    }
  std::map<int, PolyBuilder> groups;
  for (auto& [mono, c] : a.numerator().terms()) {
    int s = 0;
    for (int v = 0; v < n; ++v)
      if (inJ(v)) s += mono[v];
    if (m - KJ - s >= 0) groups[s].add(mono, c);
  }
  if (groups.empty()) return RatFun(n);
  int R = m - KJ - groups.begin()->first;
  Series S(1);
  S[0] = Poly::constant(1);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (inJ(p) == inJ(q)) continue;
      int kk = a.diags()[pair_index(p, q, n)];
      if (kk == 0) continue;
      int ia = inJ(p) ? q : p, jb = inJ(p) ? p : q;
      int s = inJ(p) ? sign_pow(kk) : 1;
      Series f(R + 1);
      for (int r = 0; r <= R; ++r) {
        if (kk >= 0 && r > kk) break;
        Mono mono;
        mono[ia] = static_cast<int16_t>(kk - r);
        mono[jb] = static_cast<int16_t>(r);
        Int c = binom_cached(kk, r) * (s * sign_pow(r));
        f[r] = Poly::monomial(mono, Rat(c));
      }
      S = mul_series(S, f, R);
    }
  PolyBuilder out;
  for (auto& [s, b] : groups) {
    int need = m - KJ - s;
    if (need >= static_cast<int>(S.size()) || S[need].is_zero()) continue;
    out.add_product(b.finish(), S[need]);
  }
  return RatFun(n, out.finish(), newk);
}

RatFun component(const RatFun& a, const Partition& P, int n, const std::vector<int>& w) {
  int m = n;
  for (int j : P.J) m -= w[j];
  return scale_coefficient(a, P.jmask(), m);
}

std::vector<std::pair<RatFun, RatFun>> split_function(const RatFun& c, const Partition& P) {
  int n = c.nvars();
  std::vector<int> posI(n, -1), posJ(n, -1);
  for (size_t t = 0; t < P.I.size(); ++t) posI[P.I[t]] = static_cast<int>(t);
  for (size_t t = 0; t < P.J.size(); ++t) posJ[P.J[t]] = static_cast<int>(t);
  int nI = static_cast<int>(P.I.size()), nJ = static_cast<int>(P.J.size());
  std::vector<int> kI(num_pairs(nI), 0), kJ(num_pairs(nJ), 0);
  Poly num = c.numerator();
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      int e = c.diags()[pair_index(p, q, n)];
      if (e == 0) continue;
      if (posI[p] >= 0 && posI[q] >= 0) kI[pair_index(posI[p], posI[q], nI)] = e;
      else if (posJ[p] >= 0 && posJ[q] >= 0) kJ[pair_index(posJ[p], posJ[q], nJ)] = e;
      else if (e > 0) num = num * Poly::diff_pow(p, q, e);  // cross zeros are multiplied out
      else throw ValidationError("split_function: cross pole present");
    }
  std::map<Mono, PolyBuilder> byI;
  for (auto& [m, coef] : num.terms()) {
    Mono mi, mj;
    for (int v = 0; v < n; ++v) {
      if (posI[v] >= 0) mi[posI[v]] = m[v];
      else mj[posJ[v]] = m[v];
    }
    byI[mi].add(mj, coef);
  }
  std::vector<std::pair<RatFun, RatFun>> out;
  for (auto& [mi, b] : byI)
    out.emplace_back(RatFun(nI, Poly::monomial(mi, 1), kI), RatFun(nJ, b.finish(), kJ));
  return out;
}

std::vector<std::pair<RatFun, RatFun>> split_component(const RatFun& a, const Partition& P, int n,
                                                       const std::vector<int>& w) {
  return split_function(component(a, P, n, w), P);
}

RatFun join(const RatFun& f, const RatFun& g, const Partition& P) {
  int n = static_cast<int>(P.I.size() + P.J.size());
  return relabel(f, n, P.I) * relabel(g, n, P.J);
}

RatFun partial(const RatFun& a, int i) {
  int n = a.nvars();
  RatFun r(n, a.numerator().derivative(i), a.diags());
  for (int m = 0; m < n; ++m) {
    if (m == i) continue;
    int idx = pair_index(std::min(i, m), std::max(i, m), n);
    int kk = a.diags()[idx];
    if (kk == 0) continue;
    std::vector<int> k = a.diags();
    k[idx] -= 1;
    Rat c = (i < m) ? kk : -kk;
    r += RatFun(n, a.numerator().scaled(c), k);
  }
  return r;
}

RatFun apply_delta(const RatFun& a) {
  int n = a.nvars();
  Poly s;
  for (int i = 0; i < n; ++i) s += a.numerator().derivative(i);
  return RatFun(n, s, a.diags());
}

RatFun apply_delta_star(const RatFun& a, const std::vector<int>& nv) {
  int n = a.nvars();
  if (static_cast<int>(nv.size()) != n) throw ValidationError("apply_delta_star: weight length");
  const Poly& p = a.numerator();
  PolyBuilder b;
  for (int i = 0; i < n; ++i) {
    Mono zi2, zi;
    zi2[i] = 2;
    zi[i] = 1;
    b.add(p.derivative(i).shifted(zi2));
    Rat coef = nv[i];
    for (int j = 0; j < n; ++j)
      if (j != i) coef += a.diag(i, j);
    b.add_scaled(p.shifted(zi), coef);
  }
  return RatFun(n, b.finish(), a.diags());
}

RatFun involution(const RatFun& a, const std::vector<int>& w) {
  int n = a.nvars();
  Mono shift;
  long sgn = 0;
  for (int i = 0; i < n; ++i) {
    shift[i] = static_cast<int16_t>(-2 * w[i]);
    sgn += w[i];
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int k = a.diags()[pair_index(i, j, n)];
      shift[i] = static_cast<int16_t>(shift[i] - k);
      shift[j] = static_cast<int16_t>(shift[j] - k);
      sgn += k;
    }
  PolyBuilder b;
  Rat s = sign_pow(sgn);
  for (auto& [m, c] : a.numerator().terms()) {
    Mono r;
    for (int i = 0; i < n; ++i) r[i] = static_cast<int16_t>(-m[i] + shift[i]);
    b.add(r, c * s);
  }
  return RatFun(n, b.finish(), a.diags());
}

RatFun te_operator(const RatFun& beta) {
  if (!apply_delta(beta).is_zero()) throw ValidationError("te_operator: input not translation invariant");
  int n = beta.nvars() + 1, l = n - 1;
  RatFun b = extend_vars(beta, n);
  RatFun r(n);
  for (int i = 0; i < l; ++i) {
    r -= RatFun::diag_power(n, i, l, -1) * partial(b, i);
    r += (RatFun::diag_power(n, i, l, -2) * b).scaled(2);
  }
  return r;
}

RatFun pi_product(const std::vector<std::vector<int>>& S) {
  int n = static_cast<int>(S.size());
  std::vector<int> k(num_pairs(n), 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(S[i].size()) != n) throw ValidationError("pi_product: matrix not square");
    if (S[i][i] != 0) throw ValidationError("pi_product: nonzero diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (S[i][j] != S[j][i]) throw ValidationError("pi_product: matrix not symmetric");
      k[pair_index(i, j, n)] = S[i][j];
    }
  }
  return RatFun(n, Poly::constant(1), k);
}

RatFun coeff_at_infinity(const RatFun& a, int v, int e) {
  int n = a.nvars();
  if (a.is_zero()) return RatFun(n - 1);
  auto deg = a.degree();
  if (!deg) throw ValidationError("coeff_at_infinity: inhomogeneous input");
  uint32_t jmask = ((1u << n) - 1) & ~(1u << v);
  RatFun c = scale_coefficient(a, jmask, *deg - e);
  if (c.is_zero()) return RatFun(n - 1);
  PolyBuilder b;
  for (auto& [m, coef] : c.numerator().terms()) {
    Mono r = drop_var(m, v);
    b.add(r, coef);
  }
  std::vector<int> k(num_pairs(n - 1), 0);
  auto idx = [v](int x) { return x < v ? x : x - 1; };
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (p != v && q != v) k[pair_index(idx(p), idx(q), n - 1)] = c.diags()[pair_index(p, q, n)];
  return RatFun(n - 1, b.finish(), k);
}

RatFun shift_coefficient(const RatFun& a, uint32_t imask, int E) {
  int n = a.nvars();
  if (a.is_zero()) return RatFun(n);
  auto inI = [imask](int v) { return (imask >> v) & 1u; };
  int Kc = 0;
  std::vector<int> newk = a.diags();
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (inI(p) != inI(q)) {
        Kc += newk[pair_index(p, q, n)];
        newk[pair_index(p, q, n)] = 0;
      }
  // Group numerator monomials by their I-degree.
  std::map<int, std::vector<const Poly::Term*>> groups;
  for (auto& t : a.numerator().terms()) {
    int d = 0;
    for (int v = 0; v < n; ++v)
      if (inI(v)) d += t.first[v];
    if (d + Kc - E >= 0) groups[d].push_back(&t);
  }
  if (groups.empty()) return RatFun(n);
  int Rmax = groups.rbegin()->first + Kc - E;
  Series C(1);
  C[0] = Poly::constant(1);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (inI(p) == inI(q)) continue;
      int kk = a.diags()[pair_index(p, q, n)];
      if (kk == 0) continue;
      int ia = inI(p) ? p : q, jb = inI(p) ? q : p;
      int s = inI(p) ? 1 : sign_pow(kk);
      Series f(Rmax + 1);
      for (int r = 0; r <= Rmax; ++r) {
        if (kk >= 0 && r > kk) break;
        f[r] = Poly::diff_pow(ia, jb, r).scaled(Rat(binom_cached(kk, r) * s));
      }
      C = mul_series(C, f, Rmax);
    }
  PolyBuilder out;
  for (auto& [d, terms] : groups) {
    int R = d + Kc - E;
    Series M(R + 1);
    {
      std::vector<PolyBuilder> mb(R + 1);
      for (auto* t : terms) {
        Series ms(1);
        Mono base = t->first;
        for (int v = 0; v < n; ++v)
          if (inI(v)) base[v] = 0;
        ms[0] = Poly::monomial(base, t->second);
        for (int v = 0; v < n; ++v) {
          if (!inI(v) || t->first[v] == 0) continue;
          int e = t->first[v];
          Series f(R + 1);
          for (int r = 0; r <= R; ++r) {
            if (e >= 0 && r > e) break;
            Mono mm;
            mm[v] = static_cast<int16_t>(r);
            f[r] = Poly::monomial(mm, Rat(binom_cached(e, r)));
          }
          ms = mul_series(ms, f, R);
        }
        for (int r = 0; r < static_cast<int>(ms.size()); ++r) mb[r].add(ms[r]);
      }
      for (int r = 0; r <= R; ++r) M[r] = mb[r].finish();
    }
    for (int r1 = 0; r1 <= R; ++r1) {
      if (M[r1].is_zero() || R - r1 >= static_cast<int>(C.size())) continue;
      out.add_product(M[r1], C[R - r1]);
    }
  }
  return RatFun(n, out.finish(), newk);
}

Rat nested_coefficient(const RatFun& a, const std::vector<int>& order, const std::vector<int>& e) {
  RatFun cur = a;
  std::vector<int> pos(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) pos[i] = i;
  for (size_t t = 0; t < order.size(); ++t) {
    if (cur.is_zero()) return 0;
    int v = static_cast<int>(std::find(pos.begin(), pos.end(), order[t]) - pos.begin());
    cur = coeff_at_infinity(cur, v, e[t]);
    pos.erase(pos.begin() + v);
  }
  if (cur.nvars() != 0) throw ValidationError("nested_coefficient: variables left");
  return cur.numerator().coeff(Mono{});
}

}  // namespace ozva
