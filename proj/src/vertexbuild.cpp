#include "ozva/vertexbuild.hpp"

#include <algorithm>
#include <optional>

#include "ozva/parallel.hpp"

namespace ozva {

StateVec StateVec::scaled(const Rat& s) const {
  StateVec r = *this;
  for (auto& x : r.c) x *= s;
  return r;
}

namespace {

void same_piece(const StateVec& a, const StateVec& b) {
  if (a.w != b.w || a.d != b.d || a.c.size() != b.c.size()) throw ValidationError("state arithmetic across graded pieces");
}

Weight add_weights(const Weight& a, const Weight& b) {
  Weight w = a;
  w.insert(w.end(), b.begin(), b.end());
  std::sort(w.begin(), w.end());
  return w;
}

std::vector<int> twos(size_t n) { return std::vector<int>(n, 2); }

// F (first nI slots = I) written over the pole bounds of the two layers:
// pieces (I-monomial, J-numerator), both numerators over those bounds.
// nullopt if some pole is deeper than the layers allow.
std::optional<std::map<Mono, Poly>> split_over(const RatFun& F, int nI, const std::vector<int>& KI,
                                               const std::vector<int>& KJ) {
  int n = F.nvars(), nJ = n - nI;
  std::vector<int> K(num_pairs(n), 0);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      int idx = pair_index(p, q, n);
      if (q < nI)
        K[idx] = KI[pair_index(p, q, nI)];
      else if (p >= nI)
        K[idx] = KJ[pair_index(p - nI, q - nI, nJ)];
      if (F.diags()[idx] < K[idx]) return std::nullopt;
    }
  std::map<Mono, PolyBuilder> by;
  Poly num = F.numerator_over(K);
  for (auto& [m, c] : num.terms()) {
    Mono mi, mj;
    for (int v = 0; v < n; ++v) (v < nI ? mi[v] : mj[v - nI]) = m[v];
    by[mi].add(mj, c);
  }
  std::map<Mono, Poly> out;
  for (auto& [mi, b] : by) out.emplace(mi, b.finish());
  return out;
}

// Terms of F whose degree in the first nI variables (diagonal included) is d.
RatFun keep_idegree(const RatFun& F, int nI, int d) {
  int n = F.nvars();
  std::vector<int> K = F.diags();
  int k = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      int& e = K[pair_index(p, q, n)];
      if (q < nI) k += e;
      else if (p < nI) e = std::min(e, 0);  // cross zeros go into the numerator
    }
  Poly num = F.numerator_over(K);
  PolyBuilder b;
  for (auto& [m, c] : num.terms()) {
    int e = k;
    for (int v = 0; v < nI; ++v) e += m[v];
    if (e == d) b.add(m, c);
  }
  return RatFun(n, b.finish(), K);
}

RatFun join_first(const RatFun& f, const RatFun& g) {
  int nI = f.nvars(), nJ = g.nvars();
  if (nI == 0) return g.scaled(f.numerator().coeff(Mono{}));
  if (nJ == 0) return f.scaled(g.numerator().coeff(Mono{}));
  Partition P;
  for (int v = 0; v < nI + nJ; ++v) (v < nI ? P.I : P.J).push_back(v);
  return join(f, g, P);
}

}  // namespace

StateVec operator+(const StateVec& a, const StateVec& b) {
  same_piece(a, b);
  StateVec r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

StateVec operator-(const StateVec& a, const StateVec& b) { return a + b.scaled(Rat(-1)); }

bool operator==(const StateVec& a, const StateVec& b) { return a.w == b.w && a.d == b.d && a.c == b.c; }

std::string to_string(const StateVec& s) {
  std::string out = "[w=";
  for (size_t i = 0; i < s.w.size(); ++i) out += (i ? "," : "") + std::to_string(s.w[i]);
  out += " d=" + std::to_string(s.d) + " :";
  for (auto& x : s.c) out += " " + to_string(x);
  return out + "]";
}

std::vector<RatFun> layer_generators(const Tower& T, const Weight& lambda, int d) {
  int l = static_cast<int>(lambda.size());
  std::vector<RatFun> out;
  if (l == 0) {
    if (d == 0) out.push_back(RatFun::constant(0, Rat(1)));
    return out;
  }
  for (auto& mu : T.weights) {
    int k = static_cast<int>(mu.size());
    if (k + l > T.L) continue;
    std::vector<int> t = mu;
    t.insert(t.end(), lambda.begin(), lambda.end());
    Partition P;
    for (int v = 0; v < k + l; ++v) (v < k ? P.I : P.J).push_back(v);
    for (size_t f = 0; f < T.families.size(); ++f) {
      if (k == 0) {
        if (d == 0) {
          const RatFun& a = T.alpha(static_cast<int>(f), lambda);
          if (!a.is_zero()) out.push_back(a);
        }
        continue;
      }
      RatFun beta = T.phi(static_cast<int>(f), t);
      if (beta.is_zero()) continue;
      for (auto& pr : split_component(beta, P, d, twos(k + l)))
        if (!pr.second.is_zero()) out.push_back(pr.second);
    }
  }
  return out;
}

VertexTruncation::VertexTruncation(const Tower& T, int D) : T_(&T), D_(D) {
  std::vector<std::pair<Weight, int>> keys;
  for (auto& w : T.weights)
    for (int d = 0; d <= D; ++d)
      if (d != 1) keys.emplace_back(w, d);
  std::vector<FunSpace> built(keys.size());
  parallel_for(keys.size(), [&](size_t i) {
    auto& [w, d] = keys[i];
    built[i] = FunSpace::echelon_span(static_cast<int>(w.size()), SpaceKind::Span, layer_generators(T, w, d));
  });
  for (size_t i = 0; i < keys.size(); ++i) layers_.emplace(keys[i], std::move(built[i]));
}

VertexTruncation::VertexTruncation(const Tower& T, int D, std::map<std::pair<Weight, int>, FunSpace> layers)
    : T_(&T), D_(D), layers_(std::move(layers)) {}

void VertexTruncation::check_cutoff(const Weight& w, int d) const {
  if (static_cast<int>(w.size()) > T_->L)
    throw CutoffOverflow("weight length " + std::to_string(w.size()) + " exceeds L = " + std::to_string(T_->L));
  if (d > D_) throw CutoffOverflow("degree " + std::to_string(d) + " exceeds D = " + std::to_string(D_));
}

const FunSpace& VertexTruncation::layer(const Weight& w, int d) const {
  check_cutoff(w, d);
  if (d < 0 || d == 1) return empty0_;
  auto it = layers_.find({w, d});
  if (it == layers_.end()) throw ValidationError("truncation: missing layer");
  return it->second;
}

StateVec VertexTruncation::zero(const Weight& w, int d) const { return StateVec{w, d, Vec(dim(w, d))}; }

StateVec VertexTruncation::unit() const {
  StateVec s = zero({}, 0);
  s.c[0] = 1;
  return s;
}

StateVec VertexTruncation::generator(int g) const {
  StateVec s = zero({g}, 2);
  const FunSpace& S = layer({g}, 2);
  for (int i = 0; i < S.dim(); ++i) s.c[i] = S.basis()[i].numerator().coeff(Mono{});
  return s;
}

std::vector<StateVec> VertexTruncation::element(const Vec& coords) const {
  std::vector<StateVec> out;
  for (int g = 0; g < static_cast<int>(coords.size()); ++g)
    if (coords[g] != 0) out.push_back(generator(g).scaled(coords[g]));
  return out;
}

Matrix VertexTruncation::action_matrix(int g, int n, const Weight& w, int d) const {
  auto key = std::make_tuple(g, n, w, d);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = act_memo_.find(key);
    if (it != act_memo_.end()) return it->second;
  }
  Weight tw = add_weights({g}, w);
  int td = d + 1 - n;
  const FunSpace& src = layer(w, d);
  const FunSpace& dst = layer(tw, td);
  Matrix M(dst.dim(), Vec(src.dim()));
  std::vector<int> t{g};
  t.insert(t.end(), w.begin(), w.end());
  auto place = canonical_placement(t);
  for (int v = 0; v < dst.dim(); ++v) {
    RatFun beta = relabel(dst.basis()[v], static_cast<int>(t.size()), place);
    RatFun c = coeff_at_infinity(beta, 0, -n - 1);
    auto co = src.coords(c);
    if (!co) throw ValidationError("generator action: expansion coefficient outside the layer");
    M[v] = *co;
  }
  std::lock_guard<std::mutex> lk(mu_);
  act_memo_.emplace(key, M);
  return M;
}

void VertexTruncation::corrupt_action(int g, int n, const Weight& w, int d, int row, int col, const Rat& delta) {
  Matrix M = action_matrix(g, n, w, d);
  M.at(row).at(col) += delta;
  std::lock_guard<std::mutex> lk(mu_);
  act_memo_[std::make_tuple(g, n, w, d)] = M;
}

StateVec VertexTruncation::act(int g, int n, const StateVec& u) const {
  Weight tw = add_weights({g}, u.w);
  int td = u.d + 1 - n;
  if (td < 0 || td == 1) return StateVec{tw, td, {}};
  check_cutoff(tw, td);
  StateVec r = zero(tw, td);
  if (u.is_zero()) return r;
  r.c = mat_vec(action_matrix(g, n, u.w, u.d), u.c);
  return r;
}

const std::vector<Matrix>& VertexTruncation::product_tensor(const Weight& lw, int d1, int n, const Weight& mw,
                                                            int d2) const {
  auto key = std::make_tuple(lw, d1, n, mw, d2);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = prod_memo_.find(key);
    if (it != prod_memo_.end()) return it->second;
  }
  Weight tw = add_weights(lw, mw);
  int td = d1 + d2 - n - 1;
  const FunSpace& SU = layer(lw, d1);
  const FunSpace& SW = layer(mw, d2);
  const FunSpace& dst = layer(tw, td);
  int nI = static_cast<int>(lw.size());
  std::vector<int> t = lw;
  t.insert(t.end(), mw.begin(), mw.end());
  auto place = canonical_placement(t);
  uint32_t imask = (1u << nI) - 1;
  int want = d1 - 2 * nI;  // degree of the I-factor
  std::vector<Matrix> out;
  for (int v = 0; v < dst.dim(); ++v) {
    RatFun beta = relabel(dst.basis()[v], static_cast<int>(t.size()), place);
    Matrix C(SU.dim(), Vec(SW.dim()));
    if (SU.dim() == 0 || SW.dim() == 0) {
      out.push_back(std::move(C));
      continue;
    }
    RatFun F = keep_idegree(shift_coefficient(beta, imask, -n - 1), nI, want);
    RatFun part(static_cast<int>(t.size()));
    int kI = 0;
    for (int x : SU.pole_bound()) kI += x;
    auto split = split_over(F, nI, SU.pole_bound(), SW.pole_bound());
    if (!split) throw ValidationError("state product: pole of the expansion coefficient deeper than the layers: " + F.to_string());
    for (auto& [mi, pj] : *split) {
      if (mi.degree() + kI != want || pj.is_zero()) continue;
      RatFun f(nI, Poly::monomial(mi, Rat(1)), SU.pole_bound());
      RatFun g(static_cast<int>(mw.size()), pj, SW.pole_bound());
      part += join_first(f, g);
      Vec a = SU.project_numerator(Poly::monomial(mi, Rat(1))), b = SW.project_numerator(pj);
      for (int i = 0; i < SU.dim(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < SW.dim(); ++j)
          if (b[j] != 0) C[i][j] += a[i] * b[j];
      }
    }
    RatFun back(static_cast<int>(t.size()));
    for (int i = 0; i < SU.dim(); ++i)
      for (int j = 0; j < SW.dim(); ++j)
        if (C[i][j] != 0) back += join_first(SU.basis()[i], SW.basis()[j]).scaled(C[i][j]);
    if (back != part)
      throw ValidationError("state product: expansion coefficient outside the layers: " + part.to_string() + " vs " +
                            back.to_string());
    out.push_back(std::move(C));
  }
  std::lock_guard<std::mutex> lk(mu_);
  return prod_memo_.emplace(key, std::move(out)).first->second;
}

StateVec VertexTruncation::product(const StateVec& u, int n, const StateVec& w) const {
  Weight tw = add_weights(u.w, w.w);
  int td = u.d + w.d - n - 1;
  if (td < 0 || td == 1) return StateVec{tw, td, {}};
  check_cutoff(tw, td);
  StateVec r = zero(tw, td);
  if (u.is_zero() || w.is_zero()) return r;
  const auto& C = product_tensor(u.w, u.d, n, w.w, w.d);
  for (size_t v = 0; v < C.size(); ++v) {
    Rat s = 0;
    for (size_t i = 0; i < u.c.size(); ++i) {
      if (u.c[i] == 0) continue;
      for (size_t j = 0; j < w.c.size(); ++j)
        if (w.c[j] != 0 && C[v][i][j] != 0) s += u.c[i] * C[v][i][j] * w.c[j];
    }
    r.c[v] = s;
  }
  return r;
}

StateVec VertexTruncation::Dop(const StateVec& u) const {
  int td = u.d + 1;
  if (td == 1) return StateVec{u.w, td, {}};
  StateVec r = zero(u.w, td);
  const FunSpace& src = layer(u.w, u.d);
  const FunSpace& dst = layer(u.w, td);
  for (int v = 0; v < dst.dim(); ++v) {
    auto co = src.coords(apply_delta(dst.basis()[v]));
    if (!co) throw ValidationError("D: layer not closed under Delta");
    for (int i = 0; i < src.dim(); ++i) r.c[v] += (*co)[i] * u.c[i];
  }
  return r;
}

StateVec VertexTruncation::Dstar(const StateVec& u) const {
  int td = u.d - 1;
  if (td < 0 || td == 1) return StateVec{u.w, td, {}};
  StateVec r = zero(u.w, td);
  const FunSpace& src = layer(u.w, u.d);
  const FunSpace& dst = layer(u.w, td);
  std::vector<int> four(u.w.size(), 4);
  for (int v = 0; v < dst.dim(); ++v) {
    auto co = src.coords(apply_delta_star(dst.basis()[v], four));
    if (!co) throw ValidationError("D*: layer not closed under Delta*");
    for (int i = 0; i < src.dim(); ++i) r.c[v] += (*co)[i] * u.c[i];
  }
  return r;
}

Vec VertexTruncation::functional_values(const StateVec& s) const {
  if (s.d != 0) throw ValidationError("functional_values: state of nonzero degree");
  const FunSpace& S = layer(s.w, 0);
  Vec out;
  for (size_t f = 0; f < T_->families.size(); ++f) {
    auto co = S.coords(T_->alpha(static_cast<int>(f), s.w));
    if (!co) throw ValidationError("functional_values: functional outside the layer");
    Rat v = 0;
    for (int i = 0; i < S.dim(); ++i) v += (*co)[i] * s.c[i];
    out.push_back(v);
  }
  return out;
}

}  // namespace ozva
