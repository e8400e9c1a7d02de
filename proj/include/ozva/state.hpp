#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "ozva/vertexbuild.hpp"

namespace ozva {

// Integrity or layout problem in a state directory; names the file.
struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hash_hex(std::string_view data);

struct State {
  std::string algebra_text;  // input bytes, verbatim
  GriessAlgebra A;
  std::unique_ptr<Tower> tower;
  std::unique_ptr<VertexTruncation> trunc;
};

// Layout: manifest, tower/, truncation/, reports/. The manifest lists every
// file with its FNV-1a 64 hash.
void save_state(const std::string& dir, const std::string& algebra_text, const Tower& T, const VertexTruncation& V);
State load_state(const std::string& dir);
// Writes reports/<name>.json and records it in the manifest.
void save_report(const std::string& dir, const std::string& name, const std::string& text);
std::map<std::string, std::string> load_reports(const std::string& dir);

std::string family_text(const Tower& T, int f);
Family parse_family(const std::vector<Weight>& weights, const std::string& text);

}  // namespace ozva
