#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ozva {

using Rat = mpq_class;
using Int = mpz_class;

// Thrown for malformed text input (exit code 2 in the CLI).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an input violates a documented precondition (exit code 3).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a request exceeds the built cutoffs.
struct CutoffOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat parse_rat(std::string_view s);
std::string to_string(const Rat& q);

// Generalized binomial C(n, r) for any integer n and r >= 0.
Int binom(long n, long r);

inline int sign_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

uint64_t fnv1a64(std::string_view data);

}  // namespace ozva
