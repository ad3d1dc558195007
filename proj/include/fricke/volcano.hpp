#pragma once

#include <string>

#include "fricke/elliptic.hpp"
#include "fricke/tripoly.hpp"

namespace fricke {

// Class polynomial H_D as data: "D h" on line 1, then h+1 integer coefficients
// with the constant term last.
struct ClassPolynomial {
    long D = 0;
    long h = 0;
    std::vector<Int> coeffs;  // leading first
};

ClassPolynomial load_class_polynomial(const std::string& path);
void save_class_polynomial(const ClassPolynomial& hd, const std::string& path);

struct VolcanoParams {
    long ell = 0;
    long D = 0;
    u64 p = 0;
    long t = 0;  // normalized so that t = 2 mod ell, hence ell | p + 1 - t
    long v = 0;
    long h = 0;
    Int m;  // curve order p + 1 - t
};

// Smallest prime p in [pmin, pmax] with p = 1 mod ell and 4p = t^2 - ell^2 v^2 D,
// v != 0 mod ell, t sign-normalized so that ell divides m = p + 1 - t.
VolcanoParams find_volcano_prime(long ell, long D, long h, u64 pmin, u64 pmax);

struct VolcanoSite {
    Curve E;
    u64 j = 0;
    std::vector<IsogenyRecord> iso;  // ell + 1 records, sorted by r
};

// Algorithm: for every root j_i of H_D mod p, construct the curve of
// cardinality m and collect all ell+1 distinct-kernel isogenies; crater
// membership = j(E') among the H_D roots. Sites come back sorted by j.
std::vector<VolcanoSite> partial_volcano(const VolcanoParams& params, const ClassPolynomial& hd,
                                         Rng& rng);

// Interpolation of U/V/W mod p from the volcano sites: per-weight linear solve
// of sigma_{t,i} against the basis rows, then Newton mod p.
TriPolyMod compute_poly_mod(const std::vector<VolcanoSite>& sites, long ell, Family fam, u64 p);

// Numerators via the dual system built from (-ell kappa_1, A*, B*); the primal
// system in (kappa_1, A, B) is rank-deficient.
ABPolyMod compute_numerators_mod(const std::vector<VolcanoSite>& sites, long ell,
                                 const TriPolyMod& U, Family which);

// The primal-system regression data: matrix over the numerator support built
// from nrows records of the first two sites, as the paper does for ell = 11.
struct PrimalSystem {
    std::vector<std::vector<u64>> matrix;
    std::vector<Mono3> support;
    int rank = 0;
};
PrimalSystem build_primal_system(const std::vector<VolcanoSite>& sites, long ell, u64 p);

long rank_mod_p(std::vector<std::vector<u64>> M, u64 p);

// Full pipeline: run volcanoes modulo enough primes and CRT-assemble the exact
// polynomial (prime search starts at pmin_hint).
TriPoly volcano_crt(long ell, Family fam, long D, const ClassPolynomial& hd, u64 seed,
                    int jobs = 1, u64 pmin_hint = 0);

}  // namespace fricke
