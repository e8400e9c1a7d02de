#include "oracles.hpp"

#include <map>
#include <random>

#include <json.hpp>

#include "ozva/exactlinalg.hpp"

namespace oracle {

using ozva::RatFun;
using nlohmann::json;

std::string example2_json() {
  return R"({"dim": 2, "basis": ["e", "x"],
    "product": [[0, 0, ["1", "0"]], [0, 1, ["0", "1"]], [1, 1, ["2", "0"]]],
    "form": [[0, 0, "1/4"], [0, 1, "0"], [1, 1, "1/2"]],
    "unit": ["1", "0"],
    "automorphisms": [[["1", "0"], ["0", "-1"]]]})";
}

std::string virasoro_json(const Rat& c) {
  json d;
  d["dim"] = 1;
  d["basis"] = {"e"};
  d["product"] = json::array({json::array({0, 0, json::array({"1"})})});
  Rat g = c / 8;
  d["form"] = json::array({json::array({0, 0, ozva::to_string(g)})});
  d["unit"] = {"1"};
  return d.dump();
}

std::string zero_product_json() {
  return R"({"dim": 2, "basis": ["a", "b"], "product": [],
    "form": [[0, 0, "1"], [1, 1, "1"]],
    "automorphisms": [[["0", "1"], ["1", "0"]]]})";
}

std::string random_algebra_json(unsigned seed, int n, bool swap) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> small(-3, 3), pos(1, 4);
  // T[i][j][k] totally symmetric; fill sorted triples
  std::vector<std::vector<std::vector<Rat>>> T(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n)));
  auto sigma = [&](int i) { return swap && i < 2 ? 1 - i : i; };
  std::map<std::vector<int>, Rat> vals;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        std::vector<int> key{i, j, k};
        std::vector<int> img{sigma(i), sigma(j), sigma(k)};
        std::sort(img.begin(), img.end());
        if (vals.count(img)) vals[key] = vals[img];
        else vals[key] = Rat(small(rng));
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<int> key{i, j, k};
        std::sort(key.begin(), key.end());
        T[i][j][k] = vals[key];
      }
  std::vector<Rat> g(n);
  for (int i = 0; i < n; ++i) g[i] = Rat(pos(rng), pos(rng));
  if (swap && n >= 2) g[1] = g[0];
  json d;
  d["dim"] = n;
  json basis = json::array();
  for (int i = 0; i < n; ++i) basis.push_back("b" + std::to_string(i));
  d["basis"] = basis;
  json prod = json::array(), form = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // <a_i a_j, a_k> = T_ijk, form diagonal
      json c = json::array();
      for (int k = 0; k < n; ++k) c.push_back(ozva::to_string(T[i][j][k] / g[k]));
      prod.push_back(json::array({i, j, c}));
    }
  for (int i = 0; i < n; ++i) form.push_back(json::array({i, i, ozva::to_string(g[i])}));
  d["product"] = prod;
  d["form"] = form;
  if (swap && n >= 2) {
    json M = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back(sigma(j) == i ? "1" : "0");
      M.push_back(row);
    }
    d["automorphisms"] = json::array({M});
  }
  return d.dump();
}

namespace {

Rat pair(const ozva::Generators& G, const ozva::Vec& x, const ozva::Vec& y) {
  Rat s = 0;
  for (int i = 0; i < G.n; ++i)
    for (int j = 0; j < G.n; ++j) s += x[i] * G.form[i][j] * y[j];
  return s;
}

ozva::Vec unit(const ozva::Generators& G, int i) {
  ozva::Vec v(G.n);
  v[i] = 1;
  return v;
}

RatFun mono(int n, const std::vector<std::tuple<int, int, int>>& factors, const Rat& c) {
  std::vector<int> k(ozva::num_pairs(n), 0);
  for (auto [i, j, e] : factors) k[ozva::pair_index(i, j, n)] += e;
  return RatFun(n, ozva::Poly::constant(c), k);
}

}  // namespace

RatFun small_arity_form(const ozva::Generators& G, const std::vector<int>& t, bool literal) {
  int l = static_cast<int>(t.size());
  auto form = [&](int a, int b) { return G.form[t[a]][t[b]]; };
  auto prodv = [&](int a, int b) { return G.prod[t[a]][t[b]]; };
  if (l == 0) return RatFun::constant(0, Rat(1));
  if (l == 1) return RatFun(1);
  if (l == 2) return mono(2, {{0, 1, -4}}, form(0, 1));
  if (l == 3) return mono(3, {{0, 1, -2}, {0, 2, -2}, {1, 2, -2}}, pair(G, unit(G, t[0]), prodv(1, 2)));
  if (l != 4) throw std::runtime_error("small_arity_form: l > 4");
  RatFun r(4);
  int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (auto& p : pairings) {
    int a = p[0], b = p[1], c = p[2], d = p[3];
    r += mono(4, {{a, b, -4}, {std::min(c, d), std::max(c, d), -4}}, form(a, b) * form(c, d));
    Rat q = pair(G, prodv(a, b), prodv(c, d));
    // The display writes every cross factor as (z_i - z_j), i < j. For the
    // pairing {13|24} this gives the wrong sign: its rho^(-2)_13 would be
    // minus the length-3 form. The consistent factor is (z_3 - z_2)^{-1}.
    if (!literal && a == 0 && b == 2) q = -q;
    std::vector<std::tuple<int, int, int>> fs{{a, b, -2}, {std::min(c, d), std::max(c, d), -2}};
    for (int x : {a, b})
      for (int y : {c, d}) fs.emplace_back(std::min(x, y), std::max(x, y), -1);
    r += mono(4, fs, q);
  }
  return r;
}

namespace {

// States of the vacuum Verma module in PBW order: modes n1 >= n2 >= ... >= 2
// for L_{-n1} ... L_{-nk} |0>.
using Word = std::vector<int>;
using State = std::map<Word, Rat>;

struct Vir {
  Rat c;
  std::map<std::pair<int, Word>, State> memo;

  // L_m applied to the PBW monomial L_{-w[0]} ... |0>
  State apply(int m, const Word& w) {
    auto key = std::make_pair(m, w);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    State out;
    if (w.empty()) {
      if (m <= -2) out[{-m}] = 1;
    } else if (-m >= w[0]) {
      Word v{-m};
      v.insert(v.end(), w.begin(), w.end());
      out[v] = 1;
    } else {
      // L_m L_{-n} rest = L_{-n} L_m rest + [L_m, L_{-n}] rest
      int n = w[0];
      Word rest(w.begin() + 1, w.end());
      State tail = apply(m, rest);
      for (auto& [u, x] : tail) add(out, apply(-n, u), x);
      if (m != n) {
        add(out, apply(m - n, rest), Rat(m + n));
      } else {
        // [L_m, L_{-m}] = 2m L_0 + c/12 (m^3 - m); L_0 acts on rest by its level
        int level = 0;
        for (int x : rest) level += x;
        State s;
        s[rest] = 1;
        add(out, s, Rat(2 * m * level) + c * Rat(m * m * m - m, 12));
      }
    }
    for (auto i = out.begin(); i != out.end();) i = i->second == 0 ? out.erase(i) : std::next(i);
    memo[key] = out;
    return out;
  }

  static void add(State& a, const State& b, const Rat& s) {
    if (s == 0) return;
    for (auto& [w, x] : b) a[w] += s * x;
  }
};

void partitions(int d, int maxpart, Word& cur, std::vector<Word>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(d, maxpart); p >= 2; --p) {
    cur.push_back(p);
    partitions(d - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<int> virasoro_vacuum_dims(const Rat& c, int dmax) {
  Vir V{c, {}};
  std::vector<int> dims;
  for (int d = 0; d <= dmax; ++d) {
    std::vector<Word> basis;
    Word cur;
    partitions(d, d, cur, basis);
    int n = static_cast<int>(basis.size());
    ozva::Matrix Gm(n, ozva::Vec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // <w_i, w_j> = <0| L_{n_k} ... L_{n_1} w_j>
        State s;
        s[basis[j]] = 1;
        for (int x : basis[i]) {
          State next;
          for (auto& [u, coef] : s) Vir::add(next, V.apply(x, u), coef);
          s = next;
        }
        auto it = s.find(Word{});
        Gm[i][j] = it == s.end() ? Rat(0) : it->second;
      }
    dims.push_back(n ? ozva::rank(Gm, n) : 0);
  }
  return dims;
}

}  // namespace oracle
