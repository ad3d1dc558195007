#pragma once

#include "fricke/tripoly.hpp"

namespace fricke {

// U_ell with Delta replaced by (E4^3 - E6^2)/1728: a trivariate polynomial in
// (X, E4, E6) with exact rational coefficients.
struct XE46Mono {
    int r = 0, a4 = 0, a6 = 0;
    auto operator<=>(const XE46Mono&) const = default;
};

struct XE46Poly {
    std::map<XE46Mono, Rat> monomials;

    void add_term(const XE46Mono& m, const Rat& c);
    bool is_zero() const { return monomials.empty(); }
    XE46Poly operator+(const XE46Poly& o) const;
    XE46Poly operator-(const XE46Poly& o) const;
    XE46Poly operator*(const XE46Poly& o) const;
    XE46Poly scaled(const Rat& k) const;
};

XE46Poly substitute_delta(const TriPoly& P);
XE46Poly xe46_partial(const XE46Poly& P, int var);  // 0 = X, 1 = E4, 2 = E6
XE46Poly xe46_monomial(int r, int a4, int a6, const Rat& c = Rat(1));

// First and second partials of U(kappa, E4, E6) at a point of F_p.
struct PartialSet {
    u64 u = 0;
    u64 dk = 0, d4 = 0, d6 = 0;
    u64 dkk = 0, dk4 = 0, dk6 = 0, d44 = 0, d46 = 0, d66 = 0;
};

// Mod-p image of the substituted polynomial, cached for repeated evaluation.
struct AtkinPoly {
    u64 p = 0;
    long ell = 0;
    std::map<XE46Mono, u64> monomials;
};

AtkinPoly atkin_reduce(const TriPoly& U, u64 p);
u64 atkin_eval(const AtkinPoly& P, u64 kappa, u64 e4, u64 e6);

PartialSet partials_at(const AtkinPoly& U, u64 kappa, u64 e4, u64 e6);
PartialSet partials_at(const TriPoly& U, u64 kappa, u64 e4, u64 e6, u64 p);

// E4(q^ell)-value of the isogenous curve from the partials:
// Etilde4 = [dk (ell^2 E4 + 4 kappa^2) - 4 ell (3 E4^2 d6 + 2 E6 d4)] / (ell^4 dk).
u64 e4_tilde(long ell, u64 kappa, u64 e4, u64 e6, const PartialSet& ps, u64 p);

// Etilde6 = -N / (ell^6 dk^3) with N cubic in ell; c2 is the paper's heavy
// coefficient (the ell^0 term is -8 dk^3 kappa^3; see the series self-test).
u64 e6_tilde(long ell, u64 kappa, u64 e4, u64 e6, const PartialSet& ps, u64 p);

struct IsogenousCurve {
    u64 kappa = 0;      // root of U(X, E4, E6)
    u64 Astar = 0, Bstar = 0;
    u64 kappa1 = 0;     // kappa / 2
    bool degenerate = false;  // dk vanished at this root
};

// All F_p-roots kappa of U_ell(X, -A/3, -B/2) and the isogenous curve data for
// each (A* = -3 ell^4 Etilde4, B* = -2 ell^6 Etilde6).
std::vector<IsogenousCurve> isogenous_from_U(long ell, u64 A, u64 B, u64 p, const TriPoly& U,
                                             Rng& rng);

}  // namespace fricke
