#include "ozva/quotient.hpp"

#include <algorithm>
#include <functional>

#include "ozva/parallel.hpp"

namespace ozva {

namespace {

std::vector<int> twos(int n) { return std::vector<int>(n, 2); }

RatFun combo(const Tower& T, const Vec& c, const Weight& w) {
  RatFun a(static_cast<int>(w.size()));
  for (size_t f = 0; f < c.size(); ++f)
    if (c[f] != 0) a += T.alpha(static_cast<int>(f), w).scaled(c[f]);
  return a;
}

Weight sub_weight(const Weight& w, const std::vector<int>& slots) {
  Weight r;
  for (int s : slots) r.push_back(w[s]);
  return r;
}

// Coefficient inner product of two functions written over the bound K.
Rat inner(const RatFun& a, const RatFun& b, const std::vector<int>& K) {
  if (a.is_zero() || b.is_zero()) return 0;
  Poly pa = a.numerator_over(K), pb = b.numerator_over(K);
  Rat s = 0;
  auto& ta = pa.terms();
  auto& tb = pb.terms();
  size_t i = 0, j = 0;
  while (i < ta.size() && j < tb.size()) {
    if (ta[i].first < tb[j].first)
      ++i;
    else if (tb[j].first < ta[i].first)
      ++j;
    else
      s += ta[i++].second * tb[j++].second;
  }
  return s;
}

std::vector<int> meet(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

}  // namespace

Character::Character(const Tower& T, Vec coef) : T_(&T), coef_(std::move(coef)) {
  if (coef_.size() != T.families.size()) throw ValidationError("character: one coefficient per family expected");
}

RatFun Character::function(const Weight& w) const {
  {
    std::lock_guard<std::mutex> lk(memo_->mu);
    auto it = memo_->fn.find(w);
    if (it != memo_->fn.end()) return it->second;
  }
  RatFun a;
  if (static_cast<int>(w.size()) <= T_->L) {
    a = combo(*T_, coef_, w);
  } else {
    const auto& G = T_->G;
    if (!G.has_omega() || w.back() != G.omega)
      throw CutoffOverflow("character: weight of length " + std::to_string(w.size()) + " without omega beyond L = " +
                           std::to_string(T_->L));
    a = evir_function(G, w, [this](const std::vector<int>& t) { return phi(t); });
  }
  std::lock_guard<std::mutex> lk(memo_->mu);
  return memo_->fn.emplace(w, a).first->second;
}

RatFun Character::phi(const std::vector<int>& tuple) const {
  Weight w = tuple;
  std::sort(w.begin(), w.end());
  RatFun a = function(w);
  return relabel(a, static_cast<int>(tuple.size()), canonical_placement(tuple));
}

Character canonical_character(const Tower& T) {
  int nf = static_cast<int>(T.families.size());
  Vec c(nf);
  int unit = -1;
  for (int f = 0; f < nf; ++f)
    if (T.families[f].level == 0) unit = f;
  if (unit < 0) throw ValidationError("character: tower has no unit family");
  Weight empty;
  c[unit] = Rat(1) / T.alpha(unit, empty).numerator().coeff(Mono{});
  for (int l = 2; l <= T.L; ++l) {
    std::vector<int> fam;
    for (int f = 0; f < nf; ++f)
      if (T.families[f].level == l) fam.push_back(f);
    if (fam.empty()) continue;
    int m = static_cast<int>(fam.size());
    Character lower(T, c);
    FunEquations eqs(m);
    for (auto& w : T.weights) {
      if (static_cast<int>(w.size()) != l) continue;
      RatFun base = lower.function(w);
      for (auto& [I, J] : unordered_two_partitions(l)) {
        Partition P{I, J};
        std::vector<RatFun> cols;
        for (int g : fam) cols.push_back(component(T.alpha(g, w), P, 0, twos(l)));
        RatFun rhs = join(lower.function(sub_weight(w, I)), lower.function(sub_weight(w, J)), P) -
                     component(base, P, 0, twos(l));
        eqs.add_block(cols, &rhs);
      }
    }
    auto xp = eqs.solve();
    if (!xp) throw ValidationError("character: no multiplicative extension at length " + std::to_string(l));
    Subspace K = eqs.kernel();
    Vec x = *xp;
    if (K.rank() > 0) {
      // <base + sum x_g alpha_g, kappa> = 0 for every kernel direction kappa
      Matrix H(m, Vec(m));
      Vec b(m);
      for (auto& w : T.weights) {
        if (static_cast<int>(w.size()) != l) continue;
        std::vector<int> Kb = T.omega0_of(w).pole_bound();
        RatFun base = lower.function(w);
        for (int g = 0; g < m; ++g) Kb = meet(Kb, T.alpha(fam[g], w).diags());
        if (!base.is_zero()) Kb = meet(Kb, base.diags());
        for (int g = 0; g < m; ++g) {
          b[g] += inner(base, T.alpha(fam[g], w), Kb);
          for (int h = 0; h < m; ++h) H[g][h] += inner(T.alpha(fam[g], w), T.alpha(fam[h], w), Kb);
        }
      }
      const auto& kr = K.rows();
      int k = static_cast<int>(kr.size());
      Vec Hx = mat_vec(H, x);
      Matrix A(k, Vec(k));
      Vec rhs(k);
      for (int i = 0; i < k; ++i) {
        Vec Hk = mat_vec(H, kr[i]);
        for (int j = 0; j < k; ++j)
          for (int g = 0; g < m; ++g) A[j][i] += kr[j][g] * Hk[g];
        for (int g = 0; g < m; ++g) rhs[i] -= kr[i][g] * (Hx[g] + b[g]);
      }
      auto Ai = inverse(A);
      if (!Ai) throw ValidationError("character: degenerate inner product on indecomposable directions");
      Vec y = mat_vec(*Ai, rhs);
      for (int i = 0; i < k; ++i)
        for (int g = 0; g < m; ++g) x[g] += y[i] * kr[i][g];
    }
    for (int g = 0; g < m; ++g) c[fam[g]] = x[g];
  }
  return Character(T, c);
}

CheckReport check_character(const Character& chi) {
  CheckReport rep;
  rep.suite = "character";
  const Tower& T = chi.tower();
  rep.record(chi.function({}) == RatFun::constant(0, Rat(1)), "chi(1) != 1");
  for (auto& w : T.weights) {
    int l = static_cast<int>(w.size());
    if (l < 2) continue;
    RatFun a = chi.function(w);
    for (auto& [I, J] : unordered_two_partitions(l)) {
      Partition P{I, J};
      RatFun lhs = component(a, P, 0, twos(l));
      RatFun rhs = join(chi.function(sub_weight(w, I)), chi.function(sub_weight(w, J)), P);
      rep.record(lhs == rhs, "multiplicativity fails on " + weight_label(T.G, w));
    }
  }
  // invariance under signed-permutation automorphisms
  for (size_t ai = 0; ai < T.G.automorphisms.size(); ++ai) {
    auto sp = as_signed_perm(T.G.automorphisms[ai]);
    if (!sp) {
      ++rep.skipped;
      continue;
    }
    for (auto& w : T.weights) {
      std::vector<int> t;
      Rat sg = 1;
      for (int g : w) {
        t.push_back(sp->perm[g]);
        sg *= sp->sign[g];
      }
      rep.record(chi.phi(t).scaled(sg) == chi.function(w),
                 "character not invariant under automorphism " + std::to_string(ai) + " on " + weight_label(T.G, w));
    }
  }
  return rep;
}

Character character_from_coefficients(const Tower& T, const Vec& coef) {
  Character chi(T, coef);
  CheckReport r = check_character(chi);
  if (!r.ok()) throw ValidationError("character rejected: " + r.failures.front());
  return chi;
}

ModeWord monomial_star(const ModeWord& w) {
  ModeWord r(w.rbegin(), w.rend());
  for (auto& [g, m] : r) m = 2 - m;
  return r;
}

int word_degree(const ModeWord& w) {
  int d = 0;
  for (auto& [g, m] : w) d += 1 - m;
  return d;
}

std::string word_label(const Generators& G, const ModeWord& w) {
  std::string s;
  for (auto& [g, m] : w) s += G.labels[g] + "(" + std::to_string(m) + ")";
  return s + "1";
}

std::vector<ModeWord> spanning_words(int ngen, int d) {
  std::vector<ModeWord> out;
  ModeWord cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int step = 2; step <= left; ++step)
      for (int g = 0; g < ngen; ++g) {
        cur.emplace_back(g, 1 - step);
        rec(left - step);
        cur.pop_back();
      }
  };
  if (d == 0) return {ModeWord{}};
  rec(d);
  return out;
}

Rat chi_value(const Character& chi, const ModeWord& w) {
  if (w.empty()) return 1;
  if (word_degree(w) != 0) return 0;
  std::vector<int> t, order, e;
  for (size_t i = 0; i < w.size(); ++i) {
    t.push_back(w[i].first);
    order.push_back(static_cast<int>(i));
    e.push_back(-w[i].second - 1);
  }
  return nested_coefficient(chi.phi(t), order, e);
}

Rat pairing(const Character& chi, const ModeWord& u, const ModeWord& w) {
  ModeWord s = monomial_star(u);
  s.insert(s.end(), w.begin(), w.end());
  return chi_value(chi, s);
}

Matrix gram(const Character& chi, const std::vector<ModeWord>& words) {
  size_t n = words.size();
  Matrix M(n, Vec(n));
  // both triangles are computed: check_quotient tests the symmetry
  parallel_for(n * n, [&](size_t k) { M[k / n][k % n] = pairing(chi, words[k / n], words[k % n]); });
  return M;
}

std::vector<QuotientRow> simple_quotient_dims(const Character& chi, int dmax) {
  std::vector<QuotientRow> rows;
  int ngen = chi.tower().G.n;
  for (int d = 0; d <= dmax; ++d) {
    QuotientRow row;
    row.d = d;
    if (d == 1) {
      rows.push_back(row);
      continue;
    }
    auto words = spanning_words(ngen, d);
    row.words = static_cast<int>(words.size());
    Matrix M = gram(chi, words);
    auto rr = rref_kernel(M, row.words);
    row.dim = rr.rank;
    // pivot columns of the row echelon form pick independent words
    for (int p : rr.pivots) row.basis.push_back(words[p]);
    row.radical = rr.kernel.rows();
    rows.push_back(row);
  }
  return rows;
}

CheckReport check_quotient(const Character& chi, const std::vector<QuotientRow>& rows, const Ranges& r) {
  CheckReport rep;
  rep.suite = "quotient";
  const auto& G = chi.tower().G;
  int dmax = rows.empty() ? 0 : rows.back().d;
  std::map<int, std::vector<ModeWord>> words;
  std::map<int, Matrix> grams;
  for (auto& row : rows) {
    if (row.d == 1) continue;
    words[row.d] = spanning_words(G.n, row.d);
    grams[row.d] = gram(chi, words[row.d]);
  }
  auto guarded = [&](const std::string& what, const std::function<bool()>& f) {
    try {
      rep.record(f(), what);
    } catch (const CutoffOverflow&) {
      ++rep.skipped;
    }
  };
  for (auto& row : rows) {
    if (row.d == 1) {
      rep.record(row.dim == 0, "V_1 != 0");
      continue;
    }
    const Matrix& M = grams[row.d];
    const auto& ws = words[row.d];
    size_t n = ws.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        rep.record(M[i][j] == M[j][i], "Gram not symmetric at d=" + std::to_string(row.d) + " " + word_label(G, ws[i]) +
                                           ", " + word_label(G, ws[j]));
    if (row.d == 0) rep.record(M[0][0] == 1 && row.dim == 1, "<1,1> != 1");
    // non-degeneracy on the basis words
    Matrix sub;
    std::vector<size_t> idx;
    for (auto& b : row.basis) idx.push_back(std::find(ws.begin(), ws.end(), b) - ws.begin());
    for (size_t i : idx) {
      Vec rr;
      for (size_t j : idx) rr.push_back(M[i][j]);
      sub.push_back(rr);
    }
    rep.record(rank(sub, static_cast<int>(idx.size())) == row.dim, "quotient Gram degenerate at d=" + std::to_string(row.d));
    // radical is an ideal: <a(n) r, w> = 0 for every spanning word w of the target degree
    for (size_t k = 0; k < row.radical.size(); ++k)
      for (int g = 0; g < G.n; ++g)
        for (int nn = r.nmin; nn <= r.nmax; ++nn) {
          int td = row.d + 1 - nn;
          if (td < 0 || td == 1 || td > dmax) continue;
          guarded("radical vector " + std::to_string(k) + " at d=" + std::to_string(row.d) + " not closed under " +
                      G.labels[g] + "(" + std::to_string(nn) + ")",
                  [&] {
                    for (auto& w : words[td]) {
                      Rat s = 0;
                      for (size_t i = 0; i < n; ++i) {
                        if (row.radical[k][i] == 0) continue;
                        ModeWord aw{{g, nn}};
                        aw.insert(aw.end(), ws[i].begin(), ws[i].end());
                        s += row.radical[k][i] * pairing(chi, aw, w);
                      }
                      if (s != 0) return false;
                    }
                    return true;
                  });
        }
  }
  // degree orthogonality between neighbouring pieces
  for (auto& [d, ws] : words)
    for (auto& [d2, ws2] : words) {
      if (d2 <= d) continue;
      guarded("pairing across degrees " + std::to_string(d) + ", " + std::to_string(d2), [&, &ws = ws, &ws2 = ws2] {
        for (auto& u : ws)
          for (auto& w : ws2)
            if (u.size() + w.size() <= 4 && pairing(chi, u, w) != 0) return false;
        return true;
      });
    }
  // automorphisms carry the radical into itself
  for (size_t ai = 0; ai < G.automorphisms.size(); ++ai) {
    auto sp = as_signed_perm(G.automorphisms[ai]);
    if (!sp) {
      ++rep.skipped;
      continue;
    }
    for (auto& row : rows) {
      if (row.d == 1 || row.radical.empty()) continue;
      const auto& ws = words[row.d];
      std::map<ModeWord, size_t> pos;
      for (size_t i = 0; i < ws.size(); ++i) pos[ws[i]] = i;
      for (auto& v : row.radical) {
        Vec img(ws.size());
        for (size_t i = 0; i < ws.size(); ++i) {
          if (v[i] == 0) continue;
          ModeWord t = ws[i];
          Rat s = 1;
          for (auto& [g, m] : t) {
            s *= sp->sign[g];
            g = sp->perm[g];
          }
          img[pos.at(t)] += s * v[i];
        }
        rep.record(is_zero(mat_vec(grams[row.d], img)),
                   "automorphism " + std::to_string(ai) + " moves the radical at d=" + std::to_string(row.d));
      }
    }
  }
  return rep;
}

}  // namespace ozva
