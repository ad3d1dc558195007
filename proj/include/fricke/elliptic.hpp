#pragma once

#include <optional>
#include <vector>

#include "fricke/fp.hpp"
#include "fricke/ints.hpp"

namespace fricke {

// y^2 = x^3 + A x + B over F_p (p > 3), affine arithmetic.
struct Curve {
    u64 p = 0, A = 0, B = 0;
    bool operator==(const Curve&) const = default;
};

struct Point {
    u64 x = 0, y = 0;
    bool inf = true;
};

bool on_curve(const Curve& E, const Point& P);
Point ec_add(const Curve& E, const Point& P, const Point& Q);
Point ec_neg(const Curve& E, const Point& P);
Point ec_mul(const Curve& E, Int n, Point P);
Point random_point(const Curve& E, Rng& rng);

u64 j_invariant(const Curve& E);
bool curve_is_singular(const Curve& E);

// Standard curve of invariant j: [3k, 2k] with k = j/(1728-j); its quadratic
// twist uses the smallest non-residue. j in {0, 1728} excluded.
Curve curve_from_j(u64 j, u64 p);
Curve quadratic_twist(const Curve& E);

// The standard curve or its twist, selected by a Monte-Carlo cardinality
// check: s random points killed by m, with [p+1+t]P != O disambiguation.
Curve curve_with_cardinality(u64 j, const Int& m, u64 p, long t, Rng& rng, int samples = 8);

// Point of exact order ell: Q = [m/ell^e]P for random P, reduced by ell until
// the order-ell layer is reached (E[ell] may be fully rational here, so the
// plain [m/ell] cofactor can annihilate every point).
Point random_l_torsion_point(const Curve& E, const Int& m, long ell, Rng& rng,
                             int max_draws = 32);

// One Velu/Elkies isogeny step from a point of exact order ell.
struct IsogenyRecord {
    std::vector<u64> kernel_xs;  // x([j]Q), j = 1..(ell-1)/2, sorted
    u64 kappa0, kappa1, kappa2, kappa3;
    u64 r;       // the U_ell root value (= kappa1)
    u64 Astar, Bstar;
    u64 j_codomain;
    bool crater = false;
};

// Codomain by the Elkies difference formulas
// A - A* = 5(6 kappa2 + 2 A kappa0), B - B* = 7(10 kappa3 + 6 A kappa1 + 4 B kappa0).
IsogenyRecord velu_isogenous_curve(const Curve& E, const Point& Q, long ell);

}  // namespace fricke
