#include "ozva/state.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ozva {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string hash_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw StateError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw StateError("cannot write " + p.string());
  out << text;
}

std::string weight_key(const Weight& w) {
  if (w.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

Weight parse_weight(const std::string& s) {
  Weight w;
  if (s == "-") return w;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) w.push_back(std::stoi(tok));
  return w;
}

json read_manifest(const fs::path& dir) {
  fs::path m = dir / "manifest";
  if (!fs::exists(m)) throw StateError("missing manifest in " + dir.string());
  try {
    return json::parse(read_file(m));
  } catch (const json::exception&) {
    throw StateError("unreadable manifest in " + dir.string());
  }
}

void write_manifest(const fs::path& dir, const json& m) { write_file(dir / "manifest", m.dump(2) + "\n"); }

std::string checked(const fs::path& dir, const json& manifest, const std::string& rel) {
  if (!manifest["files"].contains(rel)) throw StateError("file not in manifest: " + rel);
  std::string text = read_file(dir / rel);
  if (hash_hex(text) != manifest["files"][rel].get<std::string>()) throw StateError("hash mismatch: " + rel);
  return text;
}

std::string numbered(const std::string& prefix, size_t i, const std::string& ext) {
  std::string n = std::to_string(i);
  return prefix + std::string(n.size() < 4 ? 4 - n.size() : 0, '0') + n + ext;
}

}  // namespace

std::string family_text(const Tower& T, int f) {
  std::string s = "level " + std::to_string(T.families[f].level) + "\n";
  for (size_t i = 0; i < T.weights.size(); ++i)
    s += weight_key(T.weights[i]) + "\t" + T.families[f].alpha[i].to_string() + "\n";
  return s;
}

Family parse_family(const std::vector<Weight>& weights, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Family fam;
  if (!std::getline(in, line) || line.rfind("level ", 0) != 0) throw ParseError("family file: missing level line");
  fam.level = std::stoi(line.substr(6));
  fam.alpha.resize(weights.size());
  std::vector<bool> seen(weights.size(), false);
  std::map<Weight, int> index;
  for (size_t i = 0; i < weights.size(); ++i) index[weights[i]] = static_cast<int>(i);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("family file: malformed line");
    Weight w = parse_weight(line.substr(0, tab));
    auto it = index.find(w);
    if (it == index.end()) throw ParseError("family file: unknown weight");
    int idx = it->second;
    fam.alpha[idx] = RatFun::parse(line.substr(tab + 1));
    seen[idx] = true;
  }
  for (bool b : seen)
    if (!b) throw ParseError("family file: weight missing");
  return fam;
}

void save_state(const std::string& dir_s, const std::string& algebra_text, const Tower& T, const VertexTruncation& V) {
  fs::path dir(dir_s);
  fs::create_directories(dir);
  json files = json::object();
  auto put = [&](const std::string& rel, const std::string& text) {
    write_file(dir / rel, text);
    files[rel] = hash_hex(text);
  };
  put("tower/algebra.json", algebra_text);
  json tc;
  tc["max_length"] = T.L;
  tc["families"] = T.families.size();
  put("tower/config.json", tc.dump(2) + "\n");
  for (size_t f = 0; f < T.families.size(); ++f) {
    put(numbered("tower/family_", f, ".txt"), family_text(T, static_cast<int>(f)));
  }
  json vc;
  vc["max_degree"] = V.D();
  put("truncation/config.json", vc.dump(2) + "\n");
  std::map<Weight, std::string> per_weight;
  for (auto& [k, S] : V.layers()) {
    std::string& s = per_weight[k.first];
    s += "degree " + std::to_string(k.second) + " dim " + std::to_string(S.dim()) + "\n";
    for (auto& b : S.basis()) s += b.to_string() + "\n";
  }
  size_t i = 0;
  json index = json::object();
  for (auto& [w, s] : per_weight) {
    std::string name = numbered("truncation/layer_", i++, ".txt");
    put(name, "weight " + weight_key(w) + "\n" + s);
    index[weight_key(w)] = name;
  }
  put("truncation/index.json", index.dump(2) + "\n");
  json m;
  m["format"] = 1;
  m["files"] = files;
  write_manifest(dir, m);
}

State load_state(const std::string& dir_s) {
  fs::path dir(dir_s);
  json m = read_manifest(dir);
  State st;
  st.algebra_text = checked(dir, m, "tower/algebra.json");
  st.A = load_algebra_json(st.algebra_text);
  Generators G = make_generators(st.A);
  json tc = json::parse(checked(dir, m, "tower/config.json"));
  int L = tc["max_length"].get<int>();
  size_t nf = tc["families"].get<size_t>();
  if (L < 2 || L > 12) throw StateError("tower/config.json: bad max_length");
  std::vector<Weight> weights = weights_up_to(G.n, L);
  std::vector<Family> fams;
  for (size_t f = 0; f < nf; ++f) {
    std::string name = numbered("tower/family_", f, ".txt");
    try {
      fams.push_back(parse_family(weights, checked(dir, m, name)));
    } catch (const ParseError& e) {
      throw StateError(name + ": " + e.what());
    }
  }
  st.tower = std::make_unique<Tower>(assemble_tower(G, L, std::move(fams)));
  json vc = json::parse(checked(dir, m, "truncation/config.json"));
  int D = vc["max_degree"].get<int>();
  json index = json::parse(checked(dir, m, "truncation/index.json"));
  std::map<std::pair<Weight, int>, FunSpace> layers;
  for (auto& [wk, file] : index.items()) {
    std::string rel = file.get<std::string>();
    std::istringstream in(checked(dir, m, rel));
    std::string line;
    std::getline(in, line);
    Weight w = parse_weight(wk);
    int l = static_cast<int>(w.size());
    while (std::getline(in, line)) {
      int d = 0, k = 0;
      if (std::sscanf(line.c_str(), "degree %d dim %d", &d, &k) != 2) throw StateError(rel + ": malformed layer header");
      std::vector<RatFun> basis;
      for (int i = 0; i < k; ++i) {
        if (!std::getline(in, line)) throw StateError(rel + ": truncated layer");
        try {
          basis.push_back(RatFun::parse(line));
        } catch (const ParseError& e) {
          throw StateError(rel + ": " + e.what());
        }
      }
      layers.emplace(std::make_pair(w, d), FunSpace(l, SpaceKind::Span, std::move(basis)));
    }
  }
  st.trunc = std::make_unique<VertexTruncation>(*st.tower, D, std::move(layers));
  return st;
}

void save_report(const std::string& dir_s, const std::string& name, const std::string& text) {
  fs::path dir(dir_s);
  json m = read_manifest(dir);
  std::string rel = "reports/" + name + ".json";
  write_file(dir / rel, text);
  m["files"][rel] = hash_hex(text);
  write_manifest(dir, m);
}

std::map<std::string, std::string> load_reports(const std::string& dir_s) {
  fs::path dir(dir_s);
  json m = read_manifest(dir);
  std::map<std::string, std::string> out;
  for (auto& [rel, h] : m["files"].items())
    if (rel.rfind("reports/", 0) == 0) out[rel.substr(8, rel.size() - 13)] = checked(dir, m, rel);
  return out;
}

}  // namespace ozva
