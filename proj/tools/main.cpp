#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ozva/axioms.hpp"
#include "ozva/parallel.hpp"
#include "ozva/quotient.hpp"
#include "ozva/state.hpp"

using namespace ozva;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kParse = 2, kValidation = 3;

struct Timer {
  bool on = false;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  void mark(const std::string& what) {
    if (!on) return;
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "[time] " << what << ": " << s << " s\n";
  }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& doc, const std::string& out) {
  std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + out);
    f << text;
  }
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_string(x));
  return a;
}

json report_json(const CheckReport& r) {
  json j;
  j["suite"] = r.suite;
  j["attempted"] = r.attempted;
  j["passed"] = r.passed;
  j["skipped"] = r.skipped;
  j["failed"] = r.failures.size();
  json f = json::array();
  for (size_t i = 0; i < r.failures.size() && i < 20; ++i) f.push_back(r.failures[i]);
  j["failures"] = f;
  return j;
}

CheckReport tower_report(const Tower& T) {
  TowerCheck tc = check_tower(T);
  CheckReport r;
  r.suite = "tower";
  r.attempted = tc.attempted;
  r.passed = tc.attempted - static_cast<int>(tc.failures.size());
  r.failures = tc.failures;
  return r;
}

std::string weight_key(const Generators& G, const Weight& w) { return w.empty() ? "1" : weight_label(G, w); }

// ------------------------------------------------------------------ spaces

int cmd_spaces(int l, int upto, const std::string& kind_s, const std::string& out, Timer& tm) {
  if (upto > 0) {
    json doc, r = json::object(), r0 = json::object();
    for (int k = 2; k <= upto; ++k) {
      r[std::to_string(k)] = space_basis(k, SpaceKind::Admissible).dim();
      r0[std::to_string(k)] = space_basis(k, SpaceKind::Indecomposable).dim();
      tm.mark("spaces l=" + std::to_string(k));
    }
    doc["dim_R"] = r;
    doc["dim_R0"] = r0;
    emit(doc, out);
    return kOk;
  }
  SpaceKind kind = parse_space_kind(kind_s);
  if (kind == SpaceKind::OrdBounded || kind == SpaceKind::Span)
    throw ValidationError("spaces: kind " + kind_s + " has no canonical basis");
  if (l < 0 || l > 8) throw ValidationError("spaces: --l must be in 0..8");
  const FunSpace& S = space_basis(l, kind);
  tm.mark("spaces");
  std::ostringstream os;
  os << "dim = " << S.dim() << "\n";
  for (auto& b : S.basis()) os << b.to_string() << "\n";
  if (out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream(out, std::ios::binary) << os.str();
  }
  return kOk;
}

// ------------------------------------------------------------------- build

int cmd_build(const std::string& algebra, int L, int D, const std::string& dir, Timer& tm) {
  if (L < 2 || D < 2) throw ValidationError("build: need --max-length >= 2 and --max-degree >= 2");
  std::string text = read_text(algebra);
  GriessAlgebra A = load_algebra_json(text);
  Generators G = make_generators(A);
  Tower T = build_tower(G, L);
  tm.mark("tower");
  VertexTruncation V(T, D);
  tm.mark("truncation");
  save_state(dir, text, T, V);
  std::cout << "state written to " << dir << " (" << T.families.size() << " functionals, "
            << V.layers().size() << " layers)\n";
  return kOk;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const std::string& dir, const std::string& suite, const Ranges& rg, const std::string& out,
               Timer& tm) {
  static const std::vector<std::string> names = {"tower", "unit", "commutator", "virasoro", "griess", "b0", "equivariance"};
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    throw ParseError("unknown suite: " + suite);
  State st = load_state(dir);
  tm.mark("load");
  const VertexTruncation& V = *st.trunc;
  const Tower& T = *st.tower;
  json doc;
  doc["input_digest"] = hash_hex(st.algebra_text);
  doc["max_length"] = T.L;
  doc["max_degree"] = V.D();
  doc["modes"] = {rg.nmin, rg.nmax};
  json reps = json::array();
  json na = json::array();
  bool ok = true;
  for (auto& s : names) {
    if (suite != "all" && suite != s) continue;
    CheckReport r;
    if (s == "tower") r = tower_report(T);
    if (s == "unit") r = check_unit_translation(V, rg);
    if (s == "commutator") r = check_commutator(V, rg);
    if (s == "virasoro") {
      if (!T.G.has_omega() && suite == "all") {
        na.push_back(s);
        continue;
      }
      r = check_virasoro(V);
    }
    if (s == "griess") r = check_griess(V);
    if (s == "b0") r = check_b0_polynomiality(T, T.L);
    if (s == "equivariance") r = check_equivariance(V, rg);
    tm.mark(s);
    ok = ok && r.ok();
    reps.push_back(report_json(r));
  }
  doc["checks"] = reps;
  if (!na.empty()) doc["not_applicable"] = na;
  std::string text = doc.dump(2) + "\n";
  save_report(dir, "verify_" + suite, text);
  emit(doc, out);
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- quotient

Character pick_character(const Tower& T, const std::string& spec) {
  // Augmentation = the canonical multiplicative extension of chi(1) = 1.
  if (spec == "aug" || spec == "canonical") return canonical_character(T);
  json j;
  try {
    j = json::parse(read_text(spec));
  } catch (const json::exception& e) {
    throw ParseError(std::string("character file: ") + e.what());
  }
  if (!j.contains("coefficients") || !j["coefficients"].is_array())
    throw ParseError("character file: expected {\"coefficients\": [...]}");
  Vec c;
  for (auto& x : j["coefficients"]) {
    if (!x.is_string()) throw ParseError("character file: coefficients must be \"p/q\" strings");
    c.push_back(parse_rat(x.get<std::string>()));
  }
  if (c.size() != T.families.size())
    throw ValidationError("character file: need " + std::to_string(T.families.size()) + " coefficients");
  return character_from_coefficients(T, c);
}

int cmd_quotient(const std::string& dir, const std::string& cspec, int dmax, bool check, bool radical,
                 const std::string& out, Timer& tm) {
  if (dmax < 0) throw ValidationError("quotient: --max-degree must be >= 0");
  State st = load_state(dir);
  const Tower& T = *st.tower;
  Character chi = pick_character(T, cspec);
  tm.mark("character");
  auto rows = simple_quotient_dims(chi, dmax);
  tm.mark("gram");
  json doc;
  doc["input_digest"] = hash_hex(st.algebra_text);
  doc["max_length"] = T.L;
  doc["character"] = cspec == "aug" || cspec == "canonical" ? cspec : "file";
  doc["character_coefficients"] = vec_json(chi.coefficients());
  json table = json::array();
  for (auto& r : rows) {
    json row;
    row["d"] = r.d;
    row["spanning_words"] = r.words;
    row["dim"] = r.dim;
    json b = json::array();
    for (auto& w : r.basis) b.push_back(word_label(T.G, w));
    row["basis"] = b;
    if (radical) {
      json rad = json::array();
      for (auto& v : r.radical) rad.push_back(vec_json(v));
      row["radical"] = rad;
    }
    table.push_back(row);
  }
  doc["table"] = table;
  bool ok = true;
  json reps = json::array();
  CheckReport cc = check_character(chi);
  ok = ok && cc.ok();
  reps.push_back(report_json(cc));
  if (check) {
    CheckReport q = check_quotient(chi, rows);
    tm.mark("quotient checks");
    ok = ok && q.ok();
    reps.push_back(report_json(q));
  }
  doc["checks"] = reps;
  save_report(dir, "quotient", doc.dump(2) + "\n");
  if (out.empty()) {
    std::cout << "d\tdim\n";
    for (auto& r : rows) std::cout << r.d << "\t" << r.dim << "\n";
  } else {
    emit(doc, out);
  }
  return ok ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ report

int cmd_report(const std::string& dir, const std::string& out) {
  State st = load_state(dir);
  const Tower& T = *st.tower;
  const VertexTruncation& V = *st.trunc;
  json doc;
  doc["input_digest"] = hash_hex(st.algebra_text);
  doc["generators"] = T.G.labels;
  doc["max_length"] = T.L;
  doc["max_degree"] = V.D();
  json om = json::object();
  for (auto& w : T.weights) om[weight_key(T.G, w)] = T.omega0_of(w).dim();
  doc["omega0_dims"] = om;
  json b0 = json::object();
  for (int l = 0; l <= T.L; ++l) b0[std::to_string(l)] = T.dim_B0(l);
  doc["B0_dims_through_length"] = b0;
  // dims of the weight-graded pieces before gluing and before the quotient
  json graded = json::object();
  for (int d = 0; d <= V.D(); ++d) {
    json per = json::object();
    int total = 0;
    for (auto& w : T.weights) {
      int k = V.dim(w, d);
      if (k == 0) continue;
      per[weight_key(T.G, w)] = k;
      total += k;
    }
    graded[std::to_string(d)] = {{"total", total}, {"by_weight", per}};
  }
  doc["weight_graded_dims"] = graded;
  json reps = json::object();
  for (auto& [name, text] : load_reports(dir)) reps[name] = json::parse(text);
  doc["reports"] = reps;
  emit(doc, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction of vertex algebras from Griess algebra data"};
  app.require_subcommand(1);
  bool timing = false;
  int threads = 0;
  app.add_flag("--timing", timing, "print stage timings to stderr");
  app.add_option("--threads", threads, "worker threads (overrides OZVA_THREADS)")->check(CLI::PositiveNumber);

  int l = 0, upto = 0;
  std::string kind = "admissible", out;
  auto* sp = app.add_subcommand("spaces", "dimension and basis of a function space");
  sp->add_option("--l", l, "number of variables");
  sp->add_option("--kind", kind, "regular|admissible|indecomposable|simple_pole|simple_pole_indecomposable");
  sp->add_option("--upto", upto, "report dim_R and dim_R0 for l = 2..N as JSON");
  sp->add_option("--out", out, "write to file instead of stdout");

  std::string algebra, dir;
  int L = 0, D = 0;
  auto* bd = app.add_subcommand("build", "build the tower and the truncation, write a state directory");
  bd->add_option("--algebra", algebra, "algebra JSON file")->required();
  bd->add_option("--max-length", L, "weight length cutoff L")->required();
  bd->add_option("--max-degree", D, "degree cutoff D")->required();
  bd->add_option("--out", dir, "state directory")->required();

  std::string suite = "all";
  Ranges rg;
  auto* vf = app.add_subcommand("verify", "run axiom suites on a stored state");
  vf->add_option("--state", dir, "state directory")->required();
  vf->add_option("--suite", suite, "tower|unit|commutator|virasoro|griess|b0|equivariance|all");
  vf->add_option("--nmin", rg.nmin, "smallest mode");
  vf->add_option("--nmax", rg.nmax, "largest mode");
  vf->add_option("--out", out, "report file (default stdout)");

  std::string character = "aug";
  int qd = 0;
  bool no_check = false, radical = false;
  auto* qt = app.add_subcommand("quotient", "graded dimensions of the simple quotient");
  qt->add_option("--state", dir, "state directory")->required();
  qt->add_option("--character", character, "aug|canonical|FILE");
  qt->add_option("--max-degree", qd, "largest degree")->required();
  qt->add_flag("--no-check", no_check, "skip the Gram/radical consistency suite");
  qt->add_flag("--radical", radical, "include radical vectors in the report");
  qt->add_option("--out", out, "JSON report file (default: table on stdout)");

  auto* rp = app.add_subcommand("report", "collect dimensions and stored check reports");
  rp->add_option("--state", dir, "state directory")->required();
  rp->add_option("--out", out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  if (threads > 0) setenv("OZVA_THREADS", std::to_string(threads).c_str(), 1);
  Timer tm;
  tm.on = timing;
  try {
    if (*sp) return cmd_spaces(l, upto, kind, out, tm);
    if (*bd) return cmd_build(algebra, L, D, dir, tm);
    if (*vf) return cmd_verify(dir, suite, rg, out, tm);
    if (*qt) return cmd_quotient(dir, character, qd, !no_check, radical, out, tm);
    if (*rp) return cmd_report(dir, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const StateError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return kValidation;
  } catch (const CutoffOverflow& e) {
    std::cerr << "cutoff overflow: " << e.what() << "\n";
    return kValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
