#pragma once

#include <vector>

#include "fricke/fp.hpp"
#include "fricke/ints.hpp"

namespace fricke {

// Dense univariate arithmetic over F_p; coefficient vectors, lowest degree
// first, normalized (no trailing zeros).
namespace fpx {

using Poly = std::vector<u64>;

Poly normalize(Poly f);
int degree(const Poly& f);  // -1 for the zero polynomial
Poly add(const Fp& F, const Poly& a, const Poly& b);
Poly sub(const Fp& F, const Poly& a, const Poly& b);
Poly mul(const Fp& F, const Poly& a, const Poly& b);
Poly rem(const Fp& F, Poly a, const Poly& b);
Poly gcd(const Fp& F, Poly a, Poly b);  // monic
Poly powmod(const Fp& F, Poly base, Int e, const Poly& mod);
u64 eval(const Fp& F, const Poly& f, u64 x);
Poly monic(const Fp& F, Poly f);
Poly derivative(const Fp& F, const Poly& f);

// All roots in F_p by x^p - x splitting followed by randomized equal-degree
// splitting with (x + delta)^{(p-1)/2} - 1; sorted ascending.
std::vector<u64> roots(const Fp& F, const Poly& f, Rng& rng);

// Reduce integer coefficients mod p (input: constant term first).
Poly from_int_coeffs(const Fp& F, const std::vector<Int>& coeffs);

}  // namespace fpx

}  // namespace fricke
