#include "ozva/rat.hpp"

#include <cctype>

namespace ozva {

Rat parse_rat(std::string_view s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw ParseError("empty rational");
  if (t[0] == '+') t.erase(0, 1);
  size_t slash = t.find('/');
  auto valid_int = [](std::string_view x) {
    size_t i = (!x.empty() && x[0] == '-') ? 1 : 0;
    if (i >= x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(t)) throw ParseError("bad rational: " + std::string(s));
    return Rat(Int(t));
  }
  std::string a = t.substr(0, slash), b = t.substr(slash + 1);
  if (!valid_int(a) || !valid_int(b) || b[0] == '-')
    throw ParseError("bad rational: " + std::string(s));
  Int den(b);
  if (den == 0) throw ParseError("zero denominator: " + std::string(s));
  Rat q(Int(a), den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

Int binom(long n, long r) {
  if (r < 0) return 0;
  Int num = 1, den = 1;
  for (long i = 0; i < r; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return num / den;
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace ozva
