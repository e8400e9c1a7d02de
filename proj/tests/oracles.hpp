#pragma once

#include <string>
#include <vector>

#include "ozva/algebra.hpp"
#include "ozva/ratfun.hpp"

namespace oracle {

using ozva::Rat;

// {e, x}: e unit, x*x = 2e, <e,e> = 1/4, <x,x> = 1/2. x -> -x is an automorphism.
std::string example2_json();
// dim 1, e*e = e, <e,e> = c/8.
std::string virasoro_json(const Rat& c);
// Two generators with zero product and identity form.
std::string zero_product_json();
// Random valid algebra without unit: product from a random totally symmetric
// tensor and a random diagonal form. With swap = true, the tensor and form are
// invariant under exchanging basis vectors 0 and 1 and that swap is listed
// as an automorphism.
std::string random_algebra_json(unsigned seed, int dim, bool swap = false);

// The closed forms for the unit functional at lengths 2, 3, 4, written out
// term by term from the input structure constants (generator tuple in G).
// literal = true reproduces the published display, whose {13|24} product
// term carries a sign slip; the default flips that sign.
ozva::RatFun small_arity_form(const ozva::Generators& G, const std::vector<int>& tuple, bool literal = false);

// Vacuum Virasoro module: dimensions of the graded pieces of its simple
// quotient, d = 0..dmax, from Gram matrices built with the commutation
// relations.
std::vector<int> virasoro_vacuum_dims(const Rat& c, int dmax);

}  // namespace oracle
