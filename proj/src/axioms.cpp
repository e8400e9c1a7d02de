#include "ozva/axioms.hpp"

#include <algorithm>
#include <functional>

namespace ozva {

void CheckReport::record(bool good, const std::string& witness) {
  ++attempted;
  if (good)
    ++passed;
  else
    failures.push_back(witness);
}

void CheckReport::merge(const CheckReport& o) {
  attempted += o.attempted;
  passed += o.passed;
  skipped += o.skipped;
  for (auto& f : o.failures) failures.push_back(o.suite + ": " + f);
}

void Elem::add(const StateVec& s, const Rat& c) {
  set_length(static_cast<int>(s.w.size()));
  if (s.c.empty() || c == 0) return;
  auto key = std::make_pair(s.w, s.d);
  auto it = parts_.find(key);
  if (it == parts_.end()) it = parts_.emplace(key, Vec(s.c.size())).first;
  for (size_t i = 0; i < s.c.size(); ++i) it->second[i] += c * s.c[i];
  if (ozva::is_zero(it->second)) parts_.erase(it);
}

void Elem::add(const Elem& e, const Rat& c) {
  set_length(e.length());
  for (auto& s : e.states()) add(s, c);
}

std::vector<StateVec> Elem::states() const {
  std::vector<StateVec> out;
  for (auto& [k, v] : parts_) out.push_back(StateVec{k.first, k.second, v});
  return out;
}

std::string Elem::to_string() const {
  if (parts_.empty()) return "0";
  std::string s;
  for (auto& st : states()) s += (s.empty() ? "" : " + ") + ozva::to_string(st);
  return s;
}

Elem act(const VertexTruncation& V, int g, int n, const Elem& e) {
  Elem r;
  r.set_length(e.length() + 1);
  for (auto& s : e.states()) r.add(V.act(g, n, s));
  return r;
}

Elem product(const VertexTruncation& V, const Elem& u, int n, const Elem& w) {
  Elem r;
  r.set_length(u.length() + w.length());
  for (auto& a : u.states())
    for (auto& b : w.states()) r.add(V.product(a, n, b));
  return r;
}

Elem Dpow(const VertexTruncation& V, const Elem& e, int k) {
  Elem r = e;
  for (int i = 1; i <= k; ++i) {
    Elem next;
    next.set_length(e.length());
    for (auto& s : r.states()) next.add(V.Dop(s), Rat(1, i));
    r = next;
  }
  return r;
}

namespace {

void walk(const VertexTruncation& V, const StateVec& s, Word& word, int budget, Signature& sig) {
  if (s.d == 0) {
    Vec fv = V.functional_values(s);
    auto it = sig.find(word);
    if (it == sig.end())
      sig.emplace(word, fv);
    else
      for (size_t i = 0; i < fv.size(); ++i) it->second[i] += fv[i];
  }
  if (budget == 0) return;
  int ngen = V.tower().G.n;
  for (int g = 0; g < ngen; ++g)
    for (int n = s.d + 1 - V.D(); n <= s.d + 1; ++n) {
      if (n == s.d) continue;  // degree 1
      StateVec t = V.act(g, n, s);
      if (t.is_zero()) continue;
      word.emplace_back(g, n);
      walk(V, t, word, budget - 1, sig);
      word.pop_back();
    }
}

int max_len(const Elem& e) {
  int m = e.length();
  for (auto& [k, v] : e.parts()) m = std::max(m, static_cast<int>(k.first.size()));
  return m;
}

bool all_degree0(const Elem& e) {
  for (auto& [k, v] : e.parts())
    if (k.second != 0) return false;
  return true;
}

std::string weight_str(const Weight& w) {
  std::string s = "{";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "}";
}

std::string basis_str(const Weight& w, int d, int i) {
  return "e" + std::to_string(i) + "@" + weight_str(w) + ":" + std::to_string(d);
}

StateVec basis_vector(const VertexTruncation& V, const Weight& w, int d, int i) {
  StateVec s = V.zero(w, d);
  s.c[i] = 1;
  return s;
}

Rat gen_binom(int m, int s) {
  Rat r = 1;
  for (int i = 0; i < s; ++i) r = r * Rat(m - i) / Rat(i + 1);
  return r;
}

struct Basis {
  Weight w;
  int d;
  int i;
  StateVec s;
};

std::vector<Basis> all_basis(const VertexTruncation& V) {
  std::vector<Basis> out;
  for (auto& [k, S] : V.layers())
    for (int i = 0; i < S.dim(); ++i) out.push_back({k.first, k.second, i, basis_vector(V, k.first, k.second, i)});
  return out;
}

// Runs one instance; out-of-cutoff terms make it a skip.
template <class F>
void instance(CheckReport& rep, const std::string& what, F&& f) {
  try {
    auto [l, r] = f();
    bool good = Elem(l).parts() == Elem(r).parts();
    rep.record(good, what + ": lhs " + l.to_string() + " rhs " + r.to_string());
  } catch (const CutoffOverflow&) {
    ++rep.skipped;
  }
}

void b_instance(CheckReport& rep, const VertexTruncation& V, const std::string& what,
                const std::function<std::pair<Elem, Elem>()>& f) {
  try {
    auto [l, r] = f();
    auto eq = equal_in_B(V, l, r);
    if (!eq) {
      ++rep.skipped;
      return;
    }
    rep.record(*eq, what + ": lhs " + l.to_string() + " rhs " + r.to_string());
  } catch (const CutoffOverflow&) {
    ++rep.skipped;
  }
}

}  // namespace

Signature signature(const VertexTruncation& V, const Elem& e, int budget) {
  Signature sig;
  for (auto& s : e.states()) {
    Word w;
    walk(V, s, w, budget, sig);
  }
  for (auto it = sig.begin(); it != sig.end();) it = is_zero(it->second) ? sig.erase(it) : std::next(it);
  return sig;
}

int default_budget(const VertexTruncation& V, const Elem& a, const Elem& b) {
  return V.L() - std::max(max_len(a), max_len(b));
}

std::optional<bool> equal_in_B(const VertexTruncation& V, const Elem& a, const Elem& b) {
  int budget = default_budget(V, a, b);
  if (budget < 0) return std::nullopt;
  if (budget == 0 && ((a.is_zero() && b.is_zero()) || !(all_degree0(a) && all_degree0(b)))) return std::nullopt;
  return signature(V, a, budget) == signature(V, b, budget);
}

CheckReport check_unit_translation(const VertexTruncation& V, const Ranges& r) {
  CheckReport rep;
  rep.suite = "unit_translation";
  auto basis = all_basis(V);
  StateVec one = V.unit();
  for (auto& b : basis) {
    std::string bs = basis_str(b.w, b.d, b.i);
    for (int n = r.nmin; n <= r.nmax; ++n) {
      instance(rep, "1(" + std::to_string(n) + ")" + bs, [&] {
        return std::make_pair(Elem(V.product(one, n, b.s)), n == -1 ? Elem(b.s) : Elem());
      });
      instance(rep, bs + "(" + std::to_string(n) + ")1", [&] {
        return std::make_pair(Elem(V.product(b.s, n, one)), n < 0 ? Dpow(V, b.s, -n - 1) : Elem());
      });
    }
    // sl2
    instance(rep, "[D*,D]" + bs, [&] {
      Elem l(V.Dstar(V.Dop(b.s)));
      l.add(Dpow(V, Elem(V.Dstar(b.s)), 1), Rat(-1));
      return std::make_pair(l, Elem(V.delta(b.s).scaled(Rat(2))));
    });
    // (adDst) for each generator
    for (int g = 0; g < V.tower().G.n; ++g)
      for (int m = r.nmin; m <= r.nmax; ++m)
        instance(rep, "adDst g" + std::to_string(g) + "(" + std::to_string(m) + ")" + bs, [&] {
          Elem l(V.Dstar(V.act(g, m, b.s)));
          l.add(act(V, g, m, Elem(V.Dstar(b.s))), Rat(-1));
          return std::make_pair(l, act(V, g, m + 1, Elem(b.s.scaled(Rat(2 - m)))));
        });
  }
  for (int g = 0; g < V.tower().G.n; ++g)
    instance(rep, "D* g" + std::to_string(g), [&] { return std::make_pair(Elem(V.Dstar(V.generator(g))), Elem()); });
  // (V3)
  for (auto& a : basis)
    for (auto& b : basis) {
      if (a.w.size() + b.w.size() > static_cast<size_t>(V.L()) || a.w.empty() || b.w.empty()) continue;
      std::string ab = basis_str(a.w, a.d, a.i) + "," + basis_str(b.w, b.d, b.i);
      for (int n = r.nmin; n <= r.nmax; ++n) {
        instance(rep, "(Da)(n) n=" + std::to_string(n) + " " + ab, [&] {
          Elem l = product(V, Dpow(V, a.s, 1), n, b.s);
          Elem rr = product(V, a.s, n - 1, b.s);
          Elem r2;
          r2.add(rr, Rat(-n));
          return std::make_pair(l, r2);
        });
        instance(rep, "D(a(n)b) n=" + std::to_string(n) + " " + ab, [&] {
          Elem l = Dpow(V, product(V, a.s, n, b.s), 1);
          Elem rr = product(V, Dpow(V, a.s, 1), n, b.s);
          rr.add(product(V, a.s, n, Dpow(V, b.s, 1)));
          return std::make_pair(l, rr);
        });
      }
    }
  return rep;
}

CheckReport check_commutator(const VertexTruncation& V, const Ranges& r) {
  CheckReport rep;
  rep.suite = "commutator";
  auto basis = all_basis(V);
  int ngen = V.tower().G.n;
  std::vector<StateVec> gens;
  for (int g = 0; g < ngen; ++g) gens.push_back(V.generator(g));
  // (V4): a, b generators, c basis
  for (int a = 0; a < ngen; ++a)
    for (int b = 0; b < ngen; ++b)
      for (auto& c : basis) {
        if (static_cast<int>(c.w.size()) + 2 > V.L()) continue;
        for (int m = r.nmin; m <= r.nmax; ++m)
          for (int n = r.nmin; n <= r.nmax; ++n)
            instance(rep,
                     "V4 a=" + std::to_string(a) + " b=" + std::to_string(b) + " m=" + std::to_string(m) +
                         " n=" + std::to_string(n) + " c=" + basis_str(c.w, c.d, c.i),
                     [&] {
                       Elem l = act(V, a, m, act(V, b, n, Elem(c.s)));
                       l.add(act(V, b, n, act(V, a, m, Elem(c.s))), Rat(-1));
                       Elem rr;
                       for (int s = 0; s <= 3; ++s) {
                         Elem ab = V.product(gens[a], s, gens[b]);
                         if (ab.is_zero()) continue;
                         rr.add(product(V, ab, m + n - s, c.s), gen_binom(m, s));
                       }
                       return std::make_pair(l, rr);
                     });
      }
  // quasi-symmetry: u, w basis
  for (auto& u : basis)
    for (auto& w : basis) {
      if (u.w.size() + w.w.size() > static_cast<size_t>(V.L())) continue;
      if (u.w.empty() || w.w.empty()) continue;
      for (int n = r.nmin; n <= r.nmax; ++n)
        instance(rep, "qs n=" + std::to_string(n) + " " + basis_str(u.w, u.d, u.i) + "," + basis_str(w.w, w.d, w.i),
                 [&] {
                   Elem l = V.product(u.s, n, w.s);
                   Elem rr;
                   for (int i = 0; n + i <= u.d + w.d - 1; ++i) {
                     Elem t = Dpow(V, Elem(V.product(w.s, n + i, u.s)), i);
                     rr.add(t, ((n + i) % 2 == 0) ? Rat(-1) : Rat(1));
                   }
                   return std::make_pair(l, rr);
                 });
    }
  // associativity: a generator, b and c basis
  for (int a = 0; a < ngen; ++a)
    for (auto& b : basis)
      for (auto& c : basis) {
        if (static_cast<int>(b.w.size() + c.w.size()) + 1 > V.L() || b.w.empty()) continue;
        for (int m = r.nmin; m <= r.nmax; ++m)
          for (int n = r.nmin; n <= r.nmax; ++n)
            instance(rep,
                     "assoc a=" + std::to_string(a) + " m=" + std::to_string(m) + " n=" + std::to_string(n) + " " +
                         basis_str(b.w, b.d, b.i) + "," + basis_str(c.w, c.d, c.i),
                     [&] {
                       Elem l = product(V, act(V, a, m, Elem(b.s)), n, c.s);
                       Elem rr;
                       int smax = std::max(b.d + c.d - n, c.d + 2);
                       for (int s = 0; s <= smax; ++s) {
                         Rat co = gen_binom(m, s) * (s % 2 ? Rat(-1) : Rat(1));
                         if (co == 0) break;
                         rr.add(act(V, a, m - s, Elem(V.product(b.s, n + s, c.s))), co);
                         Rat sg = (m % 2 == 0) ? Rat(-1) : Rat(1);
                         rr.add(product(V, b.s, m + n - s, Elem(V.act(a, s, c.s))), co * sg);
                       }
                       return std::make_pair(l, rr);
                     });
      }
  return rep;
}

CheckReport check_virasoro(const VertexTruncation& V) {
  const auto& G = V.tower().G;
  if (!G.has_omega()) throw ValidationError("virasoro suite: input algebra has no unit");
  CheckReport rep;
  rep.suite = "virasoro";
  int w = G.omega;
  StateVec om = V.generator(w);
  Rat c = G.form[w][w] * 2;
  auto pr = [&](int n) { return Elem(V.product(om, n, om)); };
  b_instance(rep, V, "w(0)w = Dw", [&] { return std::make_pair(pr(0), Elem(V.Dop(om))); });
  b_instance(rep, V, "w(1)w = 2w", [&] { return std::make_pair(pr(1), Elem(om.scaled(Rat(2)))); });
  b_instance(rep, V, "w(2)w = 0", [&] { return std::make_pair(pr(2), Elem()); });
  b_instance(rep, V, "w(3)w = c/2", [&] { return std::make_pair(pr(3), Elem(V.unit().scaled(c / 2))); });
  for (int n = 4; n <= 6; ++n)
    b_instance(rep, V, "w(" + std::to_string(n) + ")w = 0", [&] { return std::make_pair(pr(n), Elem()); });
  for (int g = 0; g < G.n; ++g) {
    StateVec a = V.generator(g);
    b_instance(rep, V, "a(0)w = Da, a=" + std::to_string(g),
               [&] { return std::make_pair(Elem(V.product(a, 0, om)), Elem(V.Dop(a))); });
    b_instance(rep, V, "a(1)w = 2a, a=" + std::to_string(g),
               [&] { return std::make_pair(Elem(V.product(a, 1, om)), Elem(a.scaled(Rat(2)))); });
  }
  for (auto& b : all_basis(V)) {
    std::string bs = basis_str(b.w, b.d, b.i);
    b_instance(rep, V, "w(1)u = deg u " + bs,
               [&] { return std::make_pair(Elem(V.act(w, 1, b.s)), Elem(V.delta(b.s))); });
    b_instance(rep, V, "w(0)u = Du " + bs, [&] { return std::make_pair(Elem(V.act(w, 0, b.s)), Elem(V.Dop(b.s))); });
  }
  return rep;
}

CheckReport check_griess(const VertexTruncation& V) {
  const auto& G = V.tower().G;
  CheckReport rep;
  rep.suite = "griess";
  std::vector<StateVec> g;
  for (int i = 0; i < G.n; ++i) g.push_back(V.generator(i));
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b) {
      std::string ab = std::to_string(a) + "," + std::to_string(b);
      b_instance(rep, V, "a(1)b = ab " + ab, [&] {
        Elem r;
        for (int k = 0; k < G.n; ++k) r.add(g[k], G.prod[a][b][k]);
        return std::make_pair(Elem(V.product(g[a], 1, g[b])), r);
      });
      b_instance(rep, V, "a(3)b = <a,b> " + ab,
                 [&] { return std::make_pair(Elem(V.product(g[a], 3, g[b])), Elem(V.unit().scaled(G.form[a][b]))); });
      b_instance(rep, V, "a(3)b = b(3)a " + ab,
                 [&] { return std::make_pair(Elem(V.product(g[a], 3, g[b])), Elem(V.product(g[b], 3, g[a]))); });
      b_instance(rep, V, "a(1)b = b(1)a " + ab,
                 [&] { return std::make_pair(Elem(V.product(g[a], 1, g[b])), Elem(V.product(g[b], 1, g[a]))); });
      for (int c = 0; c < G.n; ++c)
        b_instance(rep, V, "<ab,c> = <a,bc> " + ab + "," + std::to_string(c), [&] {
          return std::make_pair(Elem(V.product(V.product(g[a], 1, g[b]), 3, g[c])),
                                Elem(V.product(g[a], 3, V.product(g[b], 1, g[c]))));
        });
    }
  // embedding A -> V_2: the pairing of generators through a(3)b recovers the form
  if (G.n > 0 && V.L() >= 2) {
    Vec one = V.functional_values(V.unit());
    size_t f0 = 0;
    while (f0 < one.size() && one[f0] == 0) ++f0;
    if (f0 < one.size()) {
      Matrix M(G.n, Vec(G.n));
      for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b) M[a][b] = V.functional_values(V.product(g[a], 3, g[b]))[f0] / one[f0];
      rep.record(M == G.form, "recovered form differs from input");
      if (V.tower().G.n > 0) {
        bool nd = rank(M, G.n) == G.n;
        bool expect = rank(G.form, G.n) == G.n;
        rep.record(nd == expect, "embedding rank");
      }
    }
  }
  return rep;
}

CheckReport check_b0_polynomiality(const Tower& T, int max_length) {
  CheckReport rep;
  rep.suite = "b0_polynomiality";
  for (int l = 2; l <= std::min(max_length, T.L); ++l)
    for (auto& row : polynomiality_rank_test(T, l))
      rep.record(row.rank == row.sym_dim, "Sym^2 -> X^2 not injective on " + weight_label(T.G, row.nu) + ": rank " +
                                              std::to_string(row.rank) + " < " + std::to_string(row.sym_dim));
  const auto& G = T.G;
  if (G.n == 1 || (G.has_omega() && G.n == 2))
    for (int l = 0; l <= std::min(max_length, T.L); ++l)
      rep.record(T.dim_B0(l) == 1, "B_0^(" + std::to_string(l) + ") has dimension " + std::to_string(T.dim_B0(l)));
  return rep;
}

std::optional<SignedPerm> as_signed_perm(const Matrix& M) {
  int n = static_cast<int>(M.size());
  SignedPerm s{std::vector<int>(n, -1), Vec(n)};
  std::vector<bool> hit(n, false);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (M[i][j] == 0) continue;
      if (s.perm[j] != -1 || hit[i]) return std::nullopt;
      s.perm[j] = i;
      s.sign[j] = M[i][j];
      hit[i] = true;
    }
  for (int j = 0; j < n; ++j)
    if (s.perm[j] < 0) return std::nullopt;
  return s;
}

Weight apply_perm(const SignedPerm& s, const Weight& w) {
  Weight r;
  for (int g : w) r.push_back(s.perm[g]);
  std::sort(r.begin(), r.end());
  return r;
}

Matrix transport_matrix(const VertexTruncation& V, const SignedPerm& s, const Weight& w, int d) {
  const FunSpace& src = V.layer(w, d);
  const FunSpace& dst = V.layer(apply_perm(s, w), d);
  if (src.dim() != dst.dim()) throw ValidationError("transport: layer dimensions differ on " + weight_str(w));
  std::vector<int> t;
  Rat sg = 1;
  for (int g : w) {
    t.push_back(s.perm[g]);
    sg *= s.sign[g];
  }
  auto place = canonical_placement(t);
  Matrix P(dst.dim());
  for (int v = 0; v < dst.dim(); ++v) {
    RatFun beta = relabel(dst.basis()[v], static_cast<int>(w.size()), place).scaled(sg);
    auto co = src.coords(beta);
    if (!co) throw ValidationError("transport: layer not carried onto its image on " + weight_str(w));
    P[v] = *co;
  }
  return P;
}

namespace {

Matrix mat_mul(const Matrix& A, const Matrix& B, int inner, int cols) {
  Matrix C(A.size(), Vec(cols));
  for (size_t i = 0; i < A.size(); ++i)
    for (int k = 0; k < inner; ++k) {
      if (A[i][k] == 0) continue;
      for (int j = 0; j < cols; ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

}  // namespace

CheckReport check_equivariance(const VertexTruncation& V, const Ranges& r) {
  CheckReport rep;
  rep.suite = "equivariance";
  const auto& G = V.tower().G;
  for (size_t ai = 0; ai < G.automorphisms.size(); ++ai) {
    auto sp = as_signed_perm(G.automorphisms[ai]);
    if (!sp) {
      ++rep.skipped;
      continue;
    }
    std::string tag = "aut" + std::to_string(ai);
    std::map<std::pair<Weight, int>, Matrix> P;
    for (auto& [k, S] : V.layers()) {
      try {
        P[k] = transport_matrix(V, *sp, k.first, k.second);
        rep.record(true, "");
      } catch (const ValidationError& e) {
        rep.record(false, tag + ": " + e.what());
      }
    }
    for (auto& [k, S] : V.layers()) {
      if (S.dim() == 0 || !P.count(k)) continue;
      for (int g = 0; g < G.n; ++g)
        for (int n = r.nmin; n <= r.nmax; ++n) {
          Weight tw = k.first;
          tw.push_back(g);
          std::sort(tw.begin(), tw.end());
          int td = k.second + 1 - n;
          if (td < 0 || td == 1) continue;
          if (static_cast<int>(tw.size()) > V.L() || td > V.D()) {
            ++rep.skipped;
            continue;
          }
          auto pd = P.find({tw, td});
          if (pd == P.end()) continue;
          int ds = S.dim(), dt = V.dim(tw, td);
          Matrix A = V.action_matrix(g, n, k.first, k.second);
          Matrix B = V.action_matrix(sp->perm[g], n, apply_perm(*sp, k.first), k.second);
          Matrix lhs = mat_mul(pd->second, A, dt, ds);
          Matrix rhs = mat_mul(B, P[k], ds, ds);
          for (auto& row : rhs)
            for (auto& x : row) x *= sp->sign[g];
          rep.record(lhs == rhs, tag + ": g=" + std::to_string(g) + " n=" + std::to_string(n) + " on " +
                                     weight_str(k.first) + ":" + std::to_string(k.second));
        }
    }
  }
  return rep;
}

}  // namespace ozva
