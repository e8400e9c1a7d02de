#include "ozva/coalgebra.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>

namespace ozva {

std::string weight_label(const Generators& G, const Weight& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += "+";
    s += G.labels[w[i]];
  }
  return s;
}

std::vector<Weight> weights_up_to(int ngen, int L) {
  std::vector<Weight> out{{}};
  std::vector<Weight> layer{{}};
  for (int l = 1; l <= L; ++l) {
    std::vector<Weight> next;
    for (auto& w : layer) {
      int start = w.empty() ? 0 : w.back();
      for (int g = start; g < ngen; ++g) {
        Weight v = w;
        v.push_back(g);
        next.push_back(v);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<Perm> stabilizer_generators(const Weight& w) {
  int l = static_cast<int>(w.size());
  std::vector<Perm> gens;
  for (int s = 0; s + 1 < l; ++s)
    if (w[s] == w[s + 1]) {
      Perm p(l);
      std::iota(p.begin(), p.end(), 0);
      std::swap(p[s], p[s + 1]);
      gens.push_back(p);
    }
  return gens;
}

Tensor r_map(const Generators& G, const std::vector<int>& t, int i, int j, int k) {
  Tensor out;
  if (k == 1) {
    for (int g = 0; g < G.n; ++g) {
      const Rat& c = G.prod[t[i]][t[j]][g];
      if (c == 0) continue;
      std::vector<int> s;
      for (int v = 0; v < static_cast<int>(t.size()); ++v) {
        if (v == i) continue;
        s.push_back(v == j ? g : t[v]);
      }
      out.push_back({s, c});
    }
  } else {
    const Rat& c = G.form[t[i]][t[j]];
    if (c != 0) {
      std::vector<int> s;
      for (int v = 0; v < static_cast<int>(t.size()); ++v)
        if (v != i && v != j) s.push_back(t[v]);
      out.push_back({s, c});
    }
  }
  return out;
}

std::vector<int> canonical_placement(const std::vector<int>& tuple) {
  int n = static_cast<int>(tuple.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return tuple[a] < tuple[b]; });
  return idx;
}

namespace {

// Function of m variables placed into n variables, skipping the listed slots.
RatFun embed_skipping(const RatFun& a, int n, const std::vector<int>& skip) {
  std::vector<int> map;
  for (int v = 0; v < n; ++v)
    if (std::find(skip.begin(), skip.end(), v) == skip.end()) map.push_back(v);
  return relabel(a, n, map);
}

const FunSpace& symmetric_admissible(const Weight& w) {
  static std::map<std::vector<Perm>, FunSpace> cache;
  static std::recursive_mutex mu;
  std::lock_guard lock(mu);
  int l = static_cast<int>(w.size());
  auto gens = stabilizer_generators(w);
  std::vector<Perm> key = gens;
  key.push_back(Perm(l, -1));  // distinguishes arities with no generators
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const FunSpace& R = space_basis(l, SpaceKind::Admissible);
  FunSpace s = gens.empty() ? R : symmetrize(R, gens);
  return cache.emplace(key, std::move(s)).first->second;
}

}  // namespace

RatFun evir_function(const Generators& G, const std::vector<int>& t,
                     const std::function<RatFun(const std::vector<int>&)>& phi) {
  int l = static_cast<int>(t.size());
  if (G.omega < 0 || t.back() != G.omega) throw ValidationError("evir_function: omega must be in the last slot");
  std::vector<int> head(t.begin(), t.end() - 1);
  RatFun r = te_operator(phi(head));
  for (int i = 0; i + 1 < l; ++i) {
    const Rat& c = G.form[G.omega][t[i]];
    if (c == 0) continue;
    std::vector<int> rest;
    for (int v = 0; v + 1 < l; ++v)
      if (v != i) rest.push_back(t[v]);
    RatFun b = embed_skipping(phi(rest), l, {i, l - 1});
    r += (RatFun::diag_power(l, i, l - 1, -4) * b).scaled(c);
  }
  return r;
}

PoleData required_poles(const Generators& G, const Weight& w,
                        const std::function<RatFun(const std::vector<int>&)>& phi) {
  int l = static_cast<int>(w.size());
  PoleData data;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      RatFun r2(l - 1), r4(l - 1);
      for (auto& term : r_map(G, w, i, j, 1)) r2 += phi(term.slots).scaled(term.coef);
      for (auto& term : r_map(G, w, i, j, 3)) {
        // the surviving variable z_j sits at position j-1 once z_i is dropped
        RatFun b = phi(term.slots);
        r4 += embed_skipping(b, l - 1, {j - 1}).scaled(term.coef);
      }
      data[{i, j, -2}] = r2;
      data[{i, j, -4}] = r4;
    }
  return data;
}

int Tower::weight_index(const Weight& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) {
    if (static_cast<int>(w.size()) > L) throw CutoffOverflow("weight of length " + std::to_string(w.size()) + " exceeds L = " + std::to_string(L));
    throw ValidationError("unknown weight");
  }
  return it->second;
}

RatFun Tower::phi(int f, const std::vector<int>& tuple) const {
  Weight w = tuple;
  std::sort(w.begin(), w.end());
  const RatFun& a = alpha(f, w);
  if (w == tuple) return a;
  return relabel(a, static_cast<int>(tuple.size()), canonical_placement(tuple));
}

RatFun Tower::phi(int f, const Tensor& t, int nvars) const {
  RatFun r(nvars);
  for (auto& term : t) r += phi(f, term.slots).scaled(term.coef);
  return r;
}

int Tower::dim_B0(int l) const {
  int c = 0;
  for (auto& fam : families)
    if (fam.level <= l) ++c;
  return c;
}

namespace {

void finish_tables(Tower& T) {
  T.omega0.clear();
  for (size_t wi = 0; wi < T.weights.size(); ++wi) {
    std::vector<RatFun> fs;
    for (auto& fam : T.families) fs.push_back(fam.alpha[wi]);
    int l = static_cast<int>(T.weights[wi].size());
    T.omega0.push_back(FunSpace::echelon_span(l, SpaceKind::Span, fs));
  }
}

}  // namespace

Tower assemble_tower(const Generators& G, int L, std::vector<Family> families) {
  Tower T;
  T.G = G;
  T.L = L;
  T.weights = weights_up_to(G.n, L);
  for (size_t i = 0; i < T.weights.size(); ++i) T.index_[T.weights[i]] = static_cast<int>(i);
  for (auto& f : families)
    if (f.alpha.size() != T.weights.size()) throw ValidationError("assemble_tower: family has the wrong number of weights");
  T.families = std::move(families);
  finish_tables(T);
  return T;
}

Tower build_tower(const Generators& G, int L) {
  if (L < 0) throw ValidationError("build_tower: negative length");
  Tower T;
  T.G = G;
  T.L = L;
  T.weights = weights_up_to(G.n, L);
  int nw = static_cast<int>(T.weights.size());
  for (int i = 0; i < nw; ++i) T.index_[T.weights[i]] = i;
  Family unit;
  unit.level = 0;
  unit.alpha.resize(nw);
  for (int i = 0; i < nw; ++i) unit.alpha[i] = RatFun(static_cast<int>(T.weights[i].size()));
  unit.alpha[0] = RatFun::constant(0, Rat(1));
  T.families.push_back(unit);

  for (int l = 1; l <= L; ++l) {
    std::vector<Family> fresh;
    for (int wi = 0; wi < nw; ++wi) {
      const Weight& w = T.weights[wi];
      if (static_cast<int>(w.size()) != l) continue;
      int F = static_cast<int>(T.families.size());
      if (l == 1) continue;  // R^1 = 0
      if (G.has_omega() && w.back() == G.omega) {
        for (int f = 0; f < F; ++f)
          T.families[f].alpha[wi] =
              evir_function(G, w, [&](const std::vector<int>& t) { return T.phi(f, t); });
        continue;
      }
      const FunSpace& S = symmetric_admissible(w);
      int m = S.dim();
      FunEquations eqs(F + m);
      std::vector<PoleData> req(F);
      for (int f = 0; f < F; ++f) req[f] = required_poles(G, w, [&](const std::vector<int>& t) { return T.phi(f, t); });
      std::vector<std::vector<RatFun>> img(m);
      for (int c = 0; c < m; ++c) {
        const RatFun& s = S.basis()[c];
        for (int i = 0; i < l; ++i)
          for (int j = i + 1; j < l; ++j) {
            img[c].push_back(rho_coefficient(s, i, j, -2));
            img[c].push_back(rho_coefficient(s, i, j, -4));
          }
      }
      int blk = 0;
      for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
          for (int k : {-2, -4}) {
            std::vector<RatFun> vals;
            for (int f = 0; f < F; ++f) vals.push_back(-req[f].at({i, j, k}));
            for (int c = 0; c < m; ++c) vals.push_back(img[c][blk]);
            eqs.add_block(vals);
            ++blk;
          }
      Subspace K = eqs.kernel();
      std::vector<bool> lifted(F, false);
      for (int r = 0; r < K.rank(); ++r) {
        const Vec& row = K.rows()[r];
        int p = K.pivots()[r];
        Vec x(row.begin() + F, row.end());
        RatFun a = m ? S.combine(x) : RatFun(l);
        if (p < F) {
          T.families[p].alpha[wi] = a;
          lifted[p] = true;
        } else {
          Family nf;
          nf.level = l;
          nf.alpha.resize(nw);
          for (int i = 0; i < nw; ++i) nf.alpha[i] = RatFun(static_cast<int>(T.weights[i].size()));
          nf.alpha[wi] = a;
          fresh.push_back(std::move(nf));
        }
      }
      for (int f = 0; f < F; ++f)
        if (!lifted[f])
          throw ValidationError("build_tower: no compatible lift at weight " + weight_label(G, w) +
                                " (functional " + std::to_string(f) + ")");
    }
    // functionals born at this level vanish on every other weight of length l,
    // including the omega weights whose formula only sees lower lengths
    for (auto& nf : fresh) T.families.push_back(std::move(nf));
  }
  finish_tables(T);
  return T;
}

TowerCheck check_tower(const Tower& T) {
  TowerCheck out;
  const Generators& G = T.G;
  for (size_t wi = 0; wi < T.weights.size(); ++wi) {
    const Weight& w = T.weights[wi];
    int l = static_cast<int>(w.size());
    if (l < 2) continue;
    auto gens = stabilizer_generators(w);
    for (size_t f = 0; f < T.families.size(); ++f) {
      const RatFun& a = T.families[f].alpha[wi];
      std::string tag = "weight " + weight_label(G, w) + ", functional " + std::to_string(f);
      auto phi = [&](const std::vector<int>& t) { return T.phi(static_cast<int>(f), t); };
      PoleData req = required_poles(G, w, phi);
      for (auto& [key, want] : req) {
        ++out.attempted;
        auto [i, j, k] = key;
        if (rho_coefficient(a, i, j, k) != want)
          out.failures.push_back(tag + ": rho^(" + std::to_string(k) + ")_" + std::to_string(i + 1) +
                                 std::to_string(j + 1) + " differs from phi(f, r-map)");
      }
      for (auto& g : gens) {
        ++out.attempted;
        if (permute(a, g) != a) out.failures.push_back(tag + ": not symmetric under the weight stabilizer");
      }
      ++out.attempted;
      if (!a.is_zero()) {
        auto rep = admissibility(a, false);
        if (!rep.ok) out.failures.push_back(tag + ": not admissible (" + rep.reason + ")");
      }
      if (G.has_omega() && w.back() == G.omega) {
        ++out.attempted;
        if (evir_function(G, w, phi) != a) out.failures.push_back(tag + ": omega formula mismatch");
      }
    }
  }
  return out;
}

namespace {

// Coordinates of a split (sum of I-factor x J-factor) in SI (x) SJ.
Matrix tensor_coords(const std::vector<std::pair<RatFun, RatFun>>& pieces, const FunSpace& SI, const FunSpace& SJ) {
  Matrix M(SI.dim(), Vec(SJ.dim()));
  for (auto& [f, g] : pieces) {
    Vec a = SI.project(f), b = SJ.project(g);
    for (int i = 0; i < SI.dim(); ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < SJ.dim(); ++j)
        if (b[j] != 0) M[i][j] += a[i] * b[j];
    }
  }
  return M;
}

}  // namespace

std::vector<RankRow> polynomiality_rank_test(const Tower& T, int length) {
  std::vector<RankRow> out;
  for (size_t wi = 0; wi < T.weights.size(); ++wi) {
    const Weight& nu = T.weights[wi];
    if (static_cast<int>(nu.size()) != length) continue;
    const FunSpace& Om = T.omega0[wi];
    RankRow row;
    row.nu = nu;
    // one representative partition per unordered split {nu', nu''}
    std::map<std::pair<Weight, Weight>, Partition> splits;
    for (auto& P : ordered_partitions(length)) {
      Weight a, b;
      for (int v : P.I) a.push_back(nu[v]);
      for (int v : P.J) b.push_back(nu[v]);
      if (b < a) continue;
      splits.emplace(std::make_pair(a, b), P);
    }
    std::vector<Vec> images(Om.dim());
    for (auto& [key, P] : splits) {
      const FunSpace& SA = T.omega0_of(key.first);
      const FunSpace& SB = T.omega0_of(key.second);
      bool same = key.first == key.second;
      row.sym_dim += same ? SA.dim() * (SA.dim() + 1) / 2 : SA.dim() * SB.dim();
      if (SA.dim() == 0 || SB.dim() == 0) continue;
      std::vector<int> w(length, 2);
      for (int c = 0; c < Om.dim(); ++c) {
        Matrix M = tensor_coords(split_component(Om.basis()[c], P, 0, w), SA, SB);
        for (int i = 0; i < SA.dim(); ++i)
          for (int j = same ? i : 0; j < SB.dim(); ++j) images[c].push_back(M[i][j]);
      }
    }
    int cols = images.empty() ? 0 : static_cast<int>(images[0].size());
    row.rank = cols ? rank(images, cols) : 0;
    out.push_back(row);
  }
  return out;
}

RatFun graph_generator(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw ValidationError("graph_generator: bad edge");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw ValidationError("graph_generator: repeated edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (int v = 0; v < n; ++v)
    if (adj[v].size() != 4) throw ValidationError("graph_generator: graph is not 4-regular");
  std::vector<int> colour(n, -1);
  for (int s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adj[v]) {
        if (colour[u] < 0) {
          colour[u] = 1 - colour[v];
          stack.push_back(u);
        } else if (colour[u] == colour[v]) {
          throw ValidationError("graph_generator: graph is not bipartite");
        }
      }
    }
  }
  auto connected_without = [&](int e1, int e2) {
    std::vector<int> comp(n, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (e == e1 || e == e2) continue;
        auto [a, b] = edges[e];
        int u = a == v ? b : (b == v ? a : -1);
        if (u >= 0 && comp[u] < 0) {
          comp[u] = 0;
          ++reached;
          stack.push_back(u);
        }
      }
    }
    return reached == n;
  };
  int ne = static_cast<int>(edges.size());
  for (int e1 = -1; e1 < ne; ++e1)
    for (int e2 = e1 + 1; e2 < ne; ++e2)
      if (!connected_without(e1, e2)) throw ValidationError("graph_generator: graph disconnects after removing two edges");
  // colour class 0 first, then class 1
  std::vector<int> order;
  for (int c : {0, 1})
    for (int v = 0; v < n; ++v)
      if (colour[v] == c) order.push_back(v);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<int>> S(n, std::vector<int>(n, 0));
  for (auto [a, b] : edges) S[pos[a]][pos[b]] = S[pos[b]][pos[a]] = -1;
  RatFun f = pi_product(S);
  Weight w;
  for (int v : order) w.push_back(colour[v]);
  auto group = group_closure(stabilizer_generators(w), n);
  int kmin = 0;
  for (int k : f.diags()) kmin = std::min(kmin, k);
  std::vector<int> K(num_pairs(n), kmin);
  PolyBuilder acc;
  for (auto& g : group) acc.add(permute(f, g).numerator_over(K));
  return RatFun(n, acc.finish(), K).scaled(Rat(1, static_cast<long>(group.size())));
}

}  // namespace ozva
