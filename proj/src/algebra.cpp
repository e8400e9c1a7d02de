#include "ozva/algebra.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ozva {

using json = nlohmann::json;

namespace {

Rat rat_of(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw ParseError(where + ": expected a rational as \"p/q\" string or integer");
}

int index_of(const json& v, int dim, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer index");
  int i = v.get<int>();
  if (i < 0 || i >= dim) throw ParseError(where + ": index " + std::to_string(i) + " out of range");
  return i;
}

std::string triple(const GriessAlgebra& A, int i, int j, int k) {
  return "(" + A.labels[i] + ", " + A.labels[j] + ", " + A.labels[k] + ")";
}

Vec basis_vec(int n, int i) {
  Vec v(n, Rat(0));
  v[i] = 1;
  return v;
}

}  // namespace

Vec GriessAlgebra::multiply(const Vec& x, const Vec& y) const {
  Vec r(dim, Rat(0));
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      Rat c = x[i] * y[j];
      for (int k = 0; k < dim; ++k) r[k] += c * prod[i][j][k];
    }
  }
  return r;
}

Rat GriessAlgebra::pair(const Vec& x, const Vec& y) const {
  Rat s = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s += x[i] * form[i][j] * y[j];
  return s;
}

GriessAlgebra load_algebra_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("algebra document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim")) throw ParseError("algebra document: missing field dim");
  GriessAlgebra A;
  if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() < 1) throw ParseError("dim must be a positive integer");
  A.dim = doc["dim"].get<int>();
  int n = A.dim;
  if (doc.contains("basis")) {
    for (auto& s : doc["basis"]) A.labels.push_back(s.get<std::string>());
    if (static_cast<int>(A.labels.size()) != n) throw ParseError("basis: expected " + std::to_string(n) + " labels");
  } else {
    for (int i = 0; i < n; ++i) A.labels.push_back("a" + std::to_string(i));
  }
  A.prod.assign(n, std::vector<Vec>(n, Vec(n, Rat(0))));
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (auto& e : doc.value("product", json::array())) {
    if (!e.is_array() || e.size() != 3 || !e[2].is_array()) throw ParseError("product entries are [i, j, [coords]]");
    int i = index_of(e[0], n, "product"), j = index_of(e[1], n, "product");
    if (static_cast<int>(e[2].size()) != n) throw ParseError("product: coordinate vector of wrong length");
    Vec c(n);
    for (int k = 0; k < n; ++k) c[k] = rat_of(e[2][k], "product");
    for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
      if (seen[p][q] && A.prod[p][q] != c) {
        for (int k = 0; k < n; ++k)
          if (A.prod[p][q][k] != c[k]) throw ValidationError("commutativity violated at " + triple(A, i, j, k));
      }
      A.prod[p][q] = c;
      seen[p][q] = true;
    }
  }
  A.form.assign(n, Vec(n, Rat(0)));
  std::vector<std::vector<bool>> fseen(n, std::vector<bool>(n, false));
  for (auto& e : doc.value("form", json::array())) {
    if (!e.is_array() || e.size() != 3) throw ParseError("form entries are [i, j, value]");
    int i = index_of(e[0], n, "form"), j = index_of(e[1], n, "form");
    Rat v = rat_of(e[2], "form");
    for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
      if (fseen[p][q] && A.form[p][q] != v)
        throw ValidationError("form symmetry violated at (" + A.labels[i] + ", " + A.labels[j] + ")");
      A.form[p][q] = v;
      fseen[p][q] = true;
    }
  }
  if (doc.contains("unit") && !doc["unit"].is_null()) {
    if (!doc["unit"].is_array() || static_cast<int>(doc["unit"].size()) != n) throw ParseError("unit: expected a coordinate vector");
    Vec e(n);
    for (int k = 0; k < n; ++k) e[k] = rat_of(doc["unit"][k], "unit");
    A.unit = e;
  }
  for (auto& m : doc.value("automorphisms", json::array())) {
    if (!m.is_array() || static_cast<int>(m.size()) != n) throw ParseError("automorphism: expected an n x n matrix");
    Matrix M(n, Vec(n));
    for (int i = 0; i < n; ++i) {
      if (!m[i].is_array() || static_cast<int>(m[i].size()) != n) throw ParseError("automorphism: expected an n x n matrix");
      for (int j = 0; j < n; ++j) M[i][j] = rat_of(m[i][j], "automorphism");
    }
    A.automorphisms.push_back(M);
  }
  validate(A);
  return A;
}

GriessAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_algebra_json(ss.str());
}

void validate(GriessAlgebra& A) {
  int n = A.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k)
        if (A.prod[i][j][k] != A.prod[j][i][k]) throw ValidationError("commutativity violated at " + triple(A, i, j, k));
      if (A.form[i][j] != A.form[j][i])
        throw ValidationError("form symmetry violated at (" + A.labels[i] + ", " + A.labels[j] + ")");
    }
  // <a_i a_j, a_k> = <a_i, a_j a_k>
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rat l = A.pair(A.prod[i][j], basis_vec(n, k));
        Rat r = A.pair(basis_vec(n, i), A.prod[j][k]);
        if (l != r) throw ValidationError("invariance violated at " + triple(A, i, j, k));
      }
  if (A.unit) {
    for (int i = 0; i < n; ++i) {
      Vec ea = A.multiply(*A.unit, basis_vec(n, i));
      if (ea != basis_vec(n, i)) throw ValidationError("unit axiom e*a = a fails for " + A.labels[i]);
    }
  }
  for (size_t s = 0; s < A.automorphisms.size(); ++s) {
    const Matrix& M = A.automorphisms[s];
    auto img = [&](int i) {
      Vec v(n);
      for (int k = 0; k < n; ++k) v[k] = M[k][i];
      return v;
    };
    std::string tag = "automorphism " + std::to_string(s) + " ";
    if (!inverse(M)) throw ValidationError(tag + "is singular");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec lhs = mat_vec(M, A.prod[i][j]);
        Vec rhs = A.multiply(img(i), img(j));
        for (int k = 0; k < n; ++k)
          if (lhs[k] != rhs[k]) throw ValidationError(tag + "does not preserve the product at " + triple(A, i, j, k));
        if (A.pair(img(i), img(j)) != A.form[i][j])
          throw ValidationError(tag + "does not preserve the form at (" + A.labels[i] + ", " + A.labels[j] + ")");
      }
  }
  A.nondegenerate = rank(A.form, n) == n;
}

std::string algebra_to_json(const GriessAlgebra& A) {
  json doc;
  doc["dim"] = A.dim;
  doc["basis"] = A.labels;
  json prod = json::array(), form = json::array();
  for (int i = 0; i < A.dim; ++i)
    for (int j = i; j < A.dim; ++j) {
      json c = json::array();
      for (auto& x : A.prod[i][j]) c.push_back(to_string(x));
      prod.push_back({i, j, c});
      form.push_back({i, j, to_string(A.form[i][j])});
    }
  doc["product"] = prod;
  doc["form"] = form;
  if (A.unit) {
    json u = json::array();
    for (auto& x : *A.unit) u.push_back(to_string(x));
    doc["unit"] = u;
  }
  json autos = json::array();
  for (auto& M : A.automorphisms) {
    json m = json::array();
    for (auto& row : M) {
      json r = json::array();
      for (auto& x : row) r.push_back(to_string(x));
      m.push_back(r);
    }
    autos.push_back(m);
  }
  if (!A.automorphisms.empty()) doc["automorphisms"] = autos;
  return doc.dump(1);
}

Vec Generators::unit_vector(int g) const { return basis_vec(n, g); }

Matrix conjugate_to_generators(const Generators& G, const Matrix& M) {
  // from_input * M * to_input
  int n = G.n;
  Matrix T(n, Vec(n, Rat(0))), R(n, Vec(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) T[i][j] += M[i][k] * G.to_input[k][j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) R[i][j] += G.from_input[i][k] * T[k][j];
  return R;
}

Generators make_generators(const GriessAlgebra& A) {
  Generators G;
  int n = A.dim;
  G.n = n;
  G.to_input.assign(n, Vec(n, Rat(0)));
  std::vector<int> order;
  int p = -1;
  if (A.unit) {
    for (int i = n - 1; i >= 0; --i)
      if ((*A.unit)[i] != 0) {
        p = i;
        break;
      }
  }
  for (int i = 0; i < n; ++i)
    if (i != p) order.push_back(i);
  for (int c = 0; c < static_cast<int>(order.size()); ++c) {
    G.to_input[order[c]][c] = 1;
    G.labels.push_back(A.labels[order[c]]);
  }
  if (p >= 0) {
    G.omega = n - 1;
    for (int k = 0; k < n; ++k) G.to_input[k][n - 1] = 2 * (*A.unit)[k];
    G.labels.push_back("omega");
  }
  G.from_input = *inverse(G.to_input);
  auto col = [&](int g) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = G.to_input[k][g];
    return v;
  };
  G.prod.assign(n, std::vector<Vec>(n));
  G.form.assign(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      G.prod[i][j] = mat_vec(G.from_input, A.multiply(col(i), col(j)));
      G.form[i][j] = A.pair(col(i), col(j));
    }
  for (auto& M : A.automorphisms) G.automorphisms.push_back(conjugate_to_generators(G, M));
  return G;
}

}  // namespace ozva
