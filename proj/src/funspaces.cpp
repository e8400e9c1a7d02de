#include "ozva/funspaces.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace ozva {

namespace {

std::vector<int> min_diags(const std::vector<RatFun>& fs, int l) {
  std::vector<int> K(num_pairs(l), 0);
  bool first = true;
  for (auto& f : fs) {
    if (f.is_zero()) continue;
    for (size_t p = 0; p < K.size(); ++p) K[p] = first ? f.diags()[p] : std::min(K[p], f.diags()[p]);
    first = false;
  }
  return K;
}

std::vector<int> twos(int l) { return std::vector<int>(l, 2); }

}  // namespace

RegularMatrixSet enumerate_regular_matrices(int l, const std::vector<int>& n, int bound) {
  RegularMatrixSet out{l, n, bound, {}};
  if (l < 2) return out;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) pairs.emplace_back(i, j);
  std::vector<int> rows(l, 0);
  // remaining[idx][v]: number of pairs at positions >= idx touching v
  std::vector<std::vector<int>> remaining(pairs.size() + 1, std::vector<int>(l, 0));
  for (int idx = static_cast<int>(pairs.size()) - 1; idx >= 0; --idx) {
    remaining[idx] = remaining[idx + 1];
    remaining[idx][pairs[idx].first]++;
    remaining[idx][pairs[idx].second]++;
  }
  IntMat S(l, std::vector<int>(l, 0));
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == pairs.size()) {
      for (int i = 0; i < l; ++i)
        if (rows[i] != -n[i]) return;
      out.matrices.push_back(S);
      return;
    }
    auto [i, j] = pairs[idx];
    int ri = remaining[idx + 1][i], rj = remaining[idx + 1][j];
    int ub = std::min(-n[i] - rows[i] - bound * ri, -n[j] - rows[j] - bound * rj);
    for (int v = bound; v <= ub; ++v) {
      if (ri == 0 && rows[i] + v != -n[i]) continue;
      if (rj == 0 && rows[j] + v != -n[j]) continue;
      S[i][j] = S[j][i] = v;
      rows[i] += v;
      rows[j] += v;
      rec(idx + 1);
      rows[i] -= v;
      rows[j] -= v;
    }
    S[i][j] = S[j][i] = 0;
  };
  rec(0);
  return out;
}

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Regular: return "regular";
    case SpaceKind::Admissible: return "admissible";
    case SpaceKind::Indecomposable: return "indecomposable";
    case SpaceKind::SimplePole: return "simple_pole";
    case SpaceKind::SimplePoleIndecomposable: return "simple_pole_indecomposable";
    case SpaceKind::OrdBounded: return "ord_bounded";
    case SpaceKind::Span: return "span";
  }
  return "?";
}

SpaceKind parse_space_kind(const std::string& s) {
  for (auto k : {SpaceKind::Regular, SpaceKind::Admissible, SpaceKind::Indecomposable, SpaceKind::SimplePole,
                 SpaceKind::SimplePoleIndecomposable, SpaceKind::OrdBounded, SpaceKind::Span})
    if (to_string(k) == s) return k;
  throw ParseError("unknown space kind: " + s);
}

// ---------------------------------------------------------------- FunSpace

FunSpace::FunSpace(int l, SpaceKind kind, std::vector<RatFun> basis)
    : l_(l), kind_(kind), basis_(std::move(basis)) {
  for (auto& b : basis_)
    if (b.nvars() != l_) throw ValidationError("FunSpace: arity mismatch");
  build_index();
}

void FunSpace::build_index() {
  K_ = min_diags(basis_, l_);
  std::vector<Poly> nums;
  std::set<Mono> monos;
  for (auto& b : basis_) {
    nums.push_back(b.numerator_over(K_));
    for (auto& t : nums.back().terms()) monos.insert(t.first);
  }
  index_.clear();
  int k = 0;
  for (auto& m : monos) index_[m] = k++;
  int nm = k, d = dim();
  ech_ = Echelon(nm + d);
  for (int i = 0; i < d; ++i) {
    Vec v(nm + d);
    for (auto& [m, c] : nums[i].terms()) v[index_[m]] = c;
    v[nm + i] = 1;
    ech_.insert(std::move(v));
  }
  for (int p : ech_.pivots())
    if (p >= nm) throw ValidationError("FunSpace: basis is linearly dependent");
}

FunSpace FunSpace::echelon_span(int l, SpaceKind kind, const std::vector<RatFun>& fs) {
  std::vector<int> K = min_diags(fs, l);
  std::vector<Poly> nums;
  std::set<Mono> monos;
  for (auto& f : fs) {
    if (f.is_zero()) continue;
    nums.push_back(f.numerator_over(K));
    for (auto& t : nums.back().terms()) monos.insert(t.first);
  }
  std::vector<Mono> order(monos.begin(), monos.end());
  std::unordered_map<Mono, int, MonoHash> idx;
  for (size_t i = 0; i < order.size(); ++i) idx[order[i]] = static_cast<int>(i);
  Echelon e(static_cast<int>(order.size()));
  for (auto& p : nums) {
    Vec v(order.size());
    for (auto& [m, c] : p.terms()) v[idx[m]] = c;
    e.insert(std::move(v));
  }
  std::vector<RatFun> basis;
  for (auto& row : e.rows()) {
    std::vector<Poly::Term> terms;
    for (size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0) terms.emplace_back(order[i], row[i]);
    basis.emplace_back(l, Poly::from_terms(std::move(terms)), K);
  }
  return FunSpace(l, kind, std::move(basis));
}

std::optional<Vec> FunSpace::coords(const RatFun& a) const {
  int d = dim();
  if (a.is_zero()) return Vec(d);
  if (a.nvars() != l_) return std::nullopt;
  for (size_t p = 0; p < K_.size(); ++p)
    if (a.diags()[p] < K_[p]) return std::nullopt;
  Poly num = a.numerator_over(K_);
  int nm = ech_.dim() - d;
  Vec v(nm + d);
  for (auto& [m, c] : num.terms()) {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    v[it->second] = c;
  }
  Vec r = ech_.reduce(std::move(v));
  for (int i = 0; i < nm; ++i)
    if (r[i] != 0) return std::nullopt;
  Vec c(d);
  for (int i = 0; i < d; ++i) c[i] = -r[nm + i];
  return c;
}

Vec FunSpace::project(const RatFun& a) const {
  int d = dim();
  if (a.is_zero() || d == 0) return Vec(d);
  if (a.nvars() != l_) throw ValidationError("FunSpace::project: arity mismatch");
  for (size_t p = 0; p < K_.size(); ++p)
    if (a.diags()[p] < K_[p]) throw ValidationError("FunSpace::project: pole order exceeds the space");
  return project_numerator(a.numerator_over(K_));
}

Vec FunSpace::project_numerator(const Poly& num) const {
  int d = dim();
  if (d == 0) return Vec();
  int nm = ech_.dim() - d;
  Vec v(nm + d);
  for (auto& [m, c] : num.terms()) {
    auto it = index_.find(m);
    if (it != index_.end()) v[it->second] = c;
  }
  Vec r = ech_.reduce(std::move(v));
  Vec c(d);
  for (int i = 0; i < d; ++i) c[i] = -r[nm + i];
  return c;
}

RatFun FunSpace::combine(const Vec& c) const {
  PolyBuilder b;
  for (int i = 0; i < dim(); ++i)
    if (c[i] != 0) b.add_scaled(basis_[i].numerator_over(K_), c[i]);
  return RatFun(l_, b.finish(), K_);
}

// ------------------------------------------------------------ FunEquations

void FunEquations::add_block(const std::vector<RatFun>& values, const RatFun* rhs) {
  if (static_cast<int>(values.size()) != ncols_) throw ValidationError("FunEquations: column count");
  std::vector<RatFun> all = values;
  if (rhs) all.push_back(*rhs);
  int l = -1;
  for (auto& f : all)
    if (!f.is_zero()) l = f.nvars();
  if (l < 0) return;
  std::vector<int> K = min_diags(all, l);
  std::map<Mono, Vec> rows;
  for (int c = 0; c <= ncols_; ++c) {
    if (c == ncols_ && !rhs) break;
    const RatFun& f = all[c];
    if (f.is_zero()) continue;
    Poly num = f.numerator_over(K);
    for (auto& [m, coef] : num.terms()) {
      auto it = rows.find(m);
      if (it == rows.end()) it = rows.emplace(m, Vec(ncols_ + 1)).first;
      it->second[c] = (c == ncols_) ? Rat(-coef) : coef;
    }
  }
  for (auto& [m, v] : rows) ech_.insert(std::move(v));
}

Subspace FunEquations::kernel() const {
  Matrix A;
  for (auto& r : ech_.rows()) A.emplace_back(r.begin(), r.begin() + ncols_);
  return ozva::kernel(A, ncols_);
}

std::optional<Vec> FunEquations::solve() const {
  Vec x(ncols_);
  for (size_t r = 0; r < ech_.rows().size(); ++r) {
    int p = ech_.pivots()[r];
    if (p == ncols_) return std::nullopt;
    x[p] = -ech_.rows()[r][ncols_];
  }
  return x;
}

// ------------------------------------------------------------ permutations

std::vector<Perm> all_permutations(int l) {
  std::vector<Perm> out;
  Perm p(l);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Perm> group_closure(const std::vector<Perm>& gens, int l) {
  Perm id(l);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::vector<Perm> out{id};
  for (size_t k = 0; k < out.size(); ++k)
    for (auto& g : gens) {
      Perm c(l);
      for (int i = 0; i < l; ++i) c[i] = g[out[k][i]];
      if (seen.insert(c).second) out.push_back(c);
    }
  return out;
}

FunSpace symmetrize(const FunSpace& s, const std::vector<Perm>& gens) {
  int l = s.l();
  auto group = group_closure(gens, l);
  std::vector<RatFun> avgs;
  for (auto& b : s.basis()) {
    int kmin = 0;
    for (int k : b.diags()) kmin = std::min(kmin, k);
    std::vector<int> K(num_pairs(l), kmin);
    PolyBuilder acc;
    for (auto& g : group) acc.add(permute(b, g).numerator_over(K));
    avgs.push_back(RatFun(l, acc.finish(), K).scaled(Rat(1, static_cast<long>(group.size()))));
  }
  return FunSpace::echelon_span(l, s.kind(), avgs);
}

// ------------------------------------------------------------- partitions

std::vector<Partition> ordered_partitions(int l) {
  std::vector<Partition> out;
  for (uint32_t mask = 1; mask + 1 < (1u << l); ++mask) {
    Partition p;
    for (int v = 0; v < l; ++v) ((mask >> v) & 1u ? p.J : p.I).push_back(v);
    out.push_back(p);
  }
  return out;
}

std::vector<SetPartition> set_partitions(int l) {
  std::vector<SetPartition> out;
  SetPartition cur;
  std::function<void(int)> rec = [&](int v) {
    if (v == l) {
      out.push_back(cur);
      return;
    }
    for (size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(v);
      rec(v + 1);
      cur[b].pop_back();
    }
    cur.push_back({v});
    rec(v + 1);
    cur.pop_back();
  };
  rec(0);
  return out;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> unordered_two_partitions(int l) {
  auto less = [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  };
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (uint32_t mask = 1; mask + 1 < (1u << l); ++mask) {
    std::vector<int> A, B;
    for (int v = 0; v < l; ++v) ((mask >> v) & 1u ? A : B).push_back(v);
    if (less(A, B)) out.emplace_back(A, B);
  }
  std::sort(out.begin(), out.end(), [&](auto& x, auto& y) { return less(x.first, y.first); });
  return out;
}

RatFun component0(const RatFun& a, const SetPartition& P) {
  RatFun cur = a;
  int l = a.nvars();
  for (size_t k = 0; k + 1 < P.size(); ++k) {
    Partition q;
    q.J = P[k];
    for (int v = 0; v < l; ++v)
      if (std::find(P[k].begin(), P[k].end(), v) == P[k].end()) q.I.push_back(v);
    cur = component(cur, q, 0, twos(l));
    if (cur.is_zero()) break;
  }
  return cur;
}

// ---------------------------------------------------------- admissibility

bool is_regular(const RatFun& a, const std::vector<int>& n) { return apply_delta_star(a, n).is_zero(); }

namespace {

int min_t_power(const RatFun& a, uint32_t jmask) {
  int l = a.nvars();
  int KJ = 0;
  for (int p = 0; p < l; ++p)
    for (int q = p + 1; q < l; ++q)
      if (((jmask >> p) & 1u) && ((jmask >> q) & 1u)) KJ += a.diags()[pair_index(p, q, l)];
  int smin = 0;
  bool first = true;
  for (auto& [m, c] : a.numerator().terms()) {
    int s = 0;
    for (int v = 0; v < l; ++v)
      if ((jmask >> v) & 1u) s += m[v];
    smin = first ? s : std::min(smin, s);
    first = false;
  }
  return KJ + smin;
}

}  // namespace

AdmissibilityReport admissibility(const RatFun& a, bool indecomposable) {
  int l = a.nvars();
  if (a.is_zero()) return {};
  auto deg = a.degree();
  if (!deg || *deg != -2 * l) return {false, "not homogeneous of degree -2l"};
  if (!is_regular(a, std::vector<int>(l, 4))) return {false, "not (4,...,4)-regular"};
  for (auto& P : ordered_partitions(l)) {
    int nJ = static_cast<int>(P.J.size());
    int nmin = min_t_power(a, P.jmask()) + 2 * nJ;
    for (int n = nmin; n <= 1; ++n) {
      if (n == 0 && !indecomposable) continue;
      if (!component(a, P, n, twos(l)).is_zero())
        return {false, "nonzero component of degree " + std::to_string(n)};
    }
  }
  return {};
}

// ------------------------------------------------------- space bases

namespace {

std::vector<Mono> monomials_of_degree(int nvars, int deg) {
  std::vector<Mono> out;
  Mono m;
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == nvars - 1) {
      m[v] = static_cast<int16_t>(left);
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[v] = static_cast<int16_t>(e);
      rec(v + 1, left - e);
    }
    m[v] = 0;
  };
  if (nvars == 0) {
    if (deg == 0) out.push_back(m);
    return out;
  }
  rec(0, deg);
  return out;
}

// Numerator of pi(S) over prod (z_i - z_j)^{-4}, restricted to z_{l-1} = 0.
Poly restricted_numerator(const IntMat& S) {
  int l = static_cast<int>(S.size());
  Poly p = Poly::constant(1);
  Mono last;
  for (int i = 0; i + 1 < l; ++i) last[i] = static_cast<int16_t>(S[i][l - 1] + 4);
  p = p.shifted(last);
  for (int i = 0; i + 1 < l; ++i)
    for (int j = i + 1; j + 1 < l; ++j) p = p * Poly::diff_pow(i, j, S[i][j] + 4);
  return p;
}

IntMat permute_matrix(const IntMat& S, const Perm& s) {
  int l = static_cast<int>(S.size());
  IntMat T(l, std::vector<int>(l, 0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) T[s[i]][s[j]] = S[i][j];
  return T;
}

}  // namespace

const std::vector<IntMat>& regular_basis_matrices(int l) {
  static std::map<int, std::vector<IntMat>> cache;
  static std::recursive_mutex mu;
  std::lock_guard lock(mu);
  auto it = cache.find(l);
  if (it != cache.end()) return it->second;
  std::vector<IntMat> basis;
  auto set = enumerate_regular_matrices(l, std::vector<int>(l, 4), -4);
  if (!set.matrices.empty()) {
    int D = 2 * l * l - 4 * l;
    auto monos = monomials_of_degree(l - 1, D);
    std::unordered_map<Mono, int, MonoHash> idx;
    for (size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = static_cast<int>(i);
    auto coords = [&](const IntMat& S) {
      std::vector<Int> v(monos.size());
      Poly p = restricted_numerator(S);
      for (auto& [m, c] : p.terms()) v[idx.at(m)] = c.get_num();
      return v;
    };
    auto perms = all_permutations(l);
    std::set<IntMat> visited;
    IntEchelon ech(static_cast<int>(monos.size()));
    // The span of a union of full orbits is permutation invariant, so a
    // dependent representative means its whole orbit is dependent.
    for (auto& S : set.matrices) {
      if (visited.count(S)) continue;
      std::vector<IntMat> orbit;
      for (auto& s : perms) {
        IntMat T = permute_matrix(S, s);
        if (visited.insert(T).second) orbit.push_back(T);
      }
      if (ech.contains(coords(S))) continue;
      for (auto& T : orbit)
        if (ech.insert(coords(T))) basis.push_back(T);
    }
  }
  return cache.emplace(l, std::move(basis)).first->second;
}

namespace {

// Kernel (as coefficient vectors over the pi(S_b)) of the component
// conditions, narrowed block by block.
std::vector<Vec> admissible_coefficients(int l, bool indecomposable, const std::vector<Vec>& start) {
  const auto& mats = regular_basis_matrices(l);
  int r = static_cast<int>(mats.size());
  std::vector<RatFun> pis;
  for (auto& S : mats) pis.push_back(pi_product(S));
  std::vector<Vec> Kb = start;
  for (auto& P : ordered_partitions(l)) {
    if (Kb.empty()) break;
    int nmin = 1;
    for (auto& f : pis) nmin = std::min(nmin, min_t_power(f, P.jmask()) + 2 * static_cast<int>(P.J.size()));
    for (int n = nmin; n <= 1 && !Kb.empty(); ++n) {
      if (n == 0 && !indecomposable) continue;
      std::vector<RatFun> comps(r);
      bool any = false;
      for (int b = 0; b < r; ++b) {
        comps[b] = component(pis[b], P, n, twos(l));
        any |= !comps[b].is_zero();
      }
      if (!any) continue;
      std::vector<int> K = min_diags(comps, l);
      std::vector<Poly> polys(r);
      for (int b = 0; b < r; ++b)
        if (!comps[b].is_zero()) polys[b] = comps[b].numerator_over(K);
      int k = static_cast<int>(Kb.size());
      std::vector<Poly> q(k);
      bool nonzero = false;
      for (int c = 0; c < k; ++c) {
        PolyBuilder pb;
        for (int b = 0; b < r; ++b)
          if (Kb[c][b] != 0 && !polys[b].is_zero()) pb.add_scaled(polys[b], Kb[c][b]);
        q[c] = pb.finish();
        nonzero |= !q[c].is_zero();
      }
      if (!nonzero) continue;
      std::map<Mono, Vec> rows;
      for (int c = 0; c < k; ++c)
        for (auto& [m, coef] : q[c].terms()) {
          auto it = rows.find(m);
          if (it == rows.end()) it = rows.emplace(m, Vec(k)).first;
          it->second[c] = coef;
        }
      Echelon e(k);
      for (auto& [m, v] : rows) e.insert(v);
      Subspace ker = kernel(e.rows(), k);
      std::vector<Vec> next;
      for (auto& kv : ker.rows()) {
        Vec x(r);
        for (int c = 0; c < k; ++c)
          if (kv[c] != 0)
            for (int b = 0; b < r; ++b)
              if (Kb[c][b] != 0) x[b] += kv[c] * Kb[c][b];
        next.push_back(std::move(x));
      }
      Kb = std::move(next);
    }
  }
  return Kb;
}

std::vector<RatFun> functions_from_coefficients(int l, const std::vector<Vec>& coeffs) {
  const auto& mats = regular_basis_matrices(l);
  std::vector<int> K(num_pairs(l), -4);
  std::vector<RatFun> out;
  std::map<int, Poly> nums;
  for (auto& c : coeffs) {
    PolyBuilder b;
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      auto it = nums.find(static_cast<int>(i));
      if (it == nums.end()) it = nums.emplace(static_cast<int>(i), pi_product(mats[i]).numerator_over(K)).first;
      b.add_scaled(it->second, c[i]);
    }
    out.emplace_back(l, b.finish(), K);
  }
  return out;
}

FunSpace simple_pole_subspace(const FunSpace& s, SpaceKind kind) {
  int l = s.l(), d = s.dim();
  FunEquations eq(d);
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      for (int k : {-4, -3, -2}) {
        std::vector<RatFun> vals;
        for (auto& b : s.basis()) vals.push_back(rho_coefficient(b, i, j, k));
        eq.add_block(vals);
      }
  std::vector<RatFun> fs;
  Subspace ker = eq.kernel();
  for (auto& v : ker.rows()) fs.push_back(s.combine(v));
  return FunSpace::echelon_span(l, kind, fs);
}

}  // namespace

const FunSpace& space_basis(int l, SpaceKind kind) {
  static std::map<std::pair<int, SpaceKind>, FunSpace> cache;
  static std::recursive_mutex mu;
  std::lock_guard lock(mu);
  auto key = std::make_pair(l, kind);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FunSpace fs;
  if (l == 0) {
    fs = FunSpace(0, kind, {RatFun::constant(0, 1)});
  } else {
    switch (kind) {
      case SpaceKind::Regular: {
        std::vector<RatFun> b;
        for (auto& S : regular_basis_matrices(l)) b.push_back(pi_product(S));
        fs = FunSpace(l, kind, b);
        break;
      }
      case SpaceKind::Admissible:
      case SpaceKind::Indecomposable: {
        int r = static_cast<int>(regular_basis_matrices(l).size());
        std::vector<Vec> start;
        for (int b = 0; b < r; ++b) {
          Vec e(r);
          e[b] = 1;
          start.push_back(e);
        }
        auto coeffs = admissible_coefficients(l, false, start);
        if (kind == SpaceKind::Indecomposable) coeffs = admissible_coefficients(l, true, coeffs);
        fs = FunSpace::echelon_span(l, kind, functions_from_coefficients(l, coeffs));
        break;
      }
      case SpaceKind::SimplePole:
        fs = simple_pole_subspace(space_basis(l, SpaceKind::Admissible), kind);
        break;
      case SpaceKind::SimplePoleIndecomposable:
        fs = simple_pole_subspace(space_basis(l, SpaceKind::Indecomposable), kind);
        break;
      case SpaceKind::OrdBounded:
        fs = ord_bounded_space(l, -2 * l, -4);
        break;
      case SpaceKind::Span:
        throw ValidationError("space_basis: no canonical span space");
    }
  }
  return cache.emplace(key, std::move(fs)).first->second;
}

FunSpace ord_bounded_space(int l, int degree, int bound) {
  int D = degree - bound * num_pairs(l);
  std::vector<RatFun> b;
  std::vector<int> K(num_pairs(l), bound);
  if (D >= 0)
    for (auto& m : monomials_of_degree(l, D)) b.push_back(RatFun(l, Poly::monomial(m, 1), K));
  // Normalization can raise exponents, so rebuild via the echelon span to
  // keep a common coordinate bound.
  return FunSpace::echelon_span(l, SpaceKind::OrdBounded, b);
}

// ----------------------------------------------------------- factorization

std::vector<std::pair<RatFun, RatFun>> split_minimal(const RatFun& c, const Partition& P) {
  auto pairs = split_function(c, P);
  if (pairs.empty()) return {};
  int nJ = static_cast<int>(P.J.size()), nI = static_cast<int>(P.I.size());
  std::vector<RatFun> js;
  for (auto& pr : pairs) js.push_back(pr.second);
  FunSpace W = FunSpace::echelon_span(nJ, SpaceKind::Span, js);
  std::vector<RatFun> A(W.dim(), RatFun(nI));
  for (auto& [f, g] : pairs) {
    auto cg = W.coords(g);
    if (!cg) throw ValidationError("split_minimal: internal coordinate failure");
    for (int k = 0; k < W.dim(); ++k)
      if ((*cg)[k] != 0) A[k] += f.scaled((*cg)[k]);
  }
  std::vector<std::pair<RatFun, RatFun>> out;
  for (int k = 0; k < W.dim(); ++k)
    if (!A[k].is_zero()) out.emplace_back(A[k], W.basis()[k]);
  return out;
}

namespace {

using FactorKey = std::vector<std::pair<std::vector<int>, int>>;

void add_terms(std::map<FactorKey, Rat>& acc, const std::map<FactorKey, Rat>& t, const Rat& s = 1) {
  for (auto& [k, c] : t) {
    acc[k] += c * s;
    if (acc[k] == 0) acc.erase(k);
  }
}

std::map<FactorKey, Rat> factor_rec(const RatFun& a) {
  std::map<FactorKey, Rat> out;
  if (a.is_zero()) return out;
  int l = a.nvars();
  if (l == 0) {
    out[{}] = a.numerator().coeff(Mono{});
    return out;
  }
  for (auto& [I1, I2] : unordered_two_partitions(l)) {
    Partition P{I1, I2};
    RatFun c = component(a, P, 0, twos(l));
    if (c.is_zero()) continue;
    for (auto& [A, B] : split_minimal(c, P)) {
      auto ta = factor_rec(A), tb = factor_rec(B);
      for (auto& [ka, ca] : ta)
        for (auto& [kb, cb] : tb) {
          FactorKey k;
          for (auto& [sup, idx] : ka) {
            std::vector<int> s;
            for (int v : sup) s.push_back(I1[v]);
            k.emplace_back(s, idx);
          }
          for (auto& [sup, idx] : kb) {
            std::vector<int> s;
            for (int v : sup) s.push_back(I2[v]);
            k.emplace_back(s, idx);
          }
          std::sort(k.begin(), k.end());
          std::map<FactorKey, Rat> one{{k, ca * cb}};
          add_terms(out, one);
        }
    }
    add_terms(out, factor_rec(a - c));
    return out;
  }
  const FunSpace& R0 = space_basis(l, SpaceKind::Indecomposable);
  auto co = R0.coords(a);
  if (!co) throw ValidationError("factor_indecomposables: input is not admissible");
  std::vector<int> all(l);
  std::iota(all.begin(), all.end(), 0);
  for (int k = 0; k < R0.dim(); ++k)
    if ((*co)[k] != 0) out[{{all, k}}] += (*co)[k];
  return out;
}

}  // namespace

std::vector<FactorTerm> factor_indecomposables(const RatFun& a) {
  auto rep = admissibility(a, false);
  if (!rep.ok) throw ValidationError("factor_indecomposables: " + rep.reason);
  std::vector<FactorTerm> out;
  for (auto& [k, c] : factor_rec(a)) out.push_back({c, k});
  return out;
}

RatFun reassemble(const std::vector<FactorTerm>& terms, int l) {
  RatFun acc(l);
  for (auto& t : terms) {
    RatFun prod = RatFun::constant(l, t.coef);
    for (auto& [sup, idx] : t.factors) {
      const FunSpace& R0 = space_basis(static_cast<int>(sup.size()), SpaceKind::Indecomposable);
      prod = prod * relabel(R0.basis()[idx], l, sup);
    }
    acc += prod;
  }
  return acc;
}

// -------------------------------------------------------------- poles

PoleData extract_poles(const RatFun& a) {
  PoleData d;
  int l = a.nvars();
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j)
      for (int k : {-4, -2}) d[{i, j, k}] = rho_coefficient(a, i, j, k);
  return d;
}

RatFun prescribe_poles(int l, const PoleData& data) {
  // Compatibility for disjoint pairs: rho_{st} of the (i,j) datum equals
  // rho_{ij} of the (s,t) datum, both with slots i and s removed.
  for (auto& [k1, a1] : data)
    for (auto& [k2, a2] : data) {
      auto [i, j, k] = k1;
      auto [s, t, m] = k2;
      if (i == s || i == t || j == s || j == t || k1 >= k2) continue;
      auto sh = [](int v, int removed) { return v - (v > removed ? 1 : 0); };
      RatFun x = rho_coefficient(a1, sh(s, i), sh(t, i), m);
      RatFun y = rho_coefficient(a2, sh(i, s), sh(j, s), k);
      if (!(x == y)) throw ValidationError("prescribe_poles: incompatible pole data");
    }
  const FunSpace& R = space_basis(l, SpaceKind::Admissible);
  static std::map<std::pair<int, std::tuple<int, int, int>>, std::vector<RatFun>> rho_cache;
  static std::mutex rho_mu;
  FunEquations eq(R.dim());
  for (auto& [key, val] : data) {
    std::lock_guard lock(rho_mu);
    auto [i, j, k] = key;
    auto it = rho_cache.find({l, key});
    if (it == rho_cache.end()) {
      std::vector<RatFun> vals;
      for (auto& b : R.basis()) vals.push_back(rho_coefficient(b, i, j, k));
      it = rho_cache.emplace(std::make_pair(l, key), std::move(vals)).first;
    }
    eq.add_block(it->second, &val);
  }
  auto x = eq.solve();
  if (!x) throw ValidationError("prescribe_poles: inconsistent system");
  return R.combine(*x);
}

RatFun reconstruct_from_parts(int l, const std::vector<std::pair<SetPartition, RatFun>>& comps) {
  for (auto& [P, a] : comps)
    for (auto& [Q, b] : comps) {
      if (P.size() < 2 || Q.size() < 2) continue;
      if (!(component0(a, Q) == component0(b, P)))
        throw ValidationError("reconstruct_from_parts: coherence violation");
    }
  RatFun acc(l);
  for (auto& [P, a] : comps) {
    long r = static_cast<long>(P.size());
    if (r < 2) continue;
    Int f = 1;
    for (long i = 2; i < r; ++i) f *= i;
    acc += a.scaled(Rat(f * sign_pow(r)));
  }
  return acc;
}

}  // namespace ozva
