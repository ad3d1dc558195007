#include "fricke/elliptic.hpp"

#include <algorithm>
#include <stdexcept>

#include "fricke/ints.hpp"

namespace fricke {

bool on_curve(const Curve& E, const Point& P) {
    if (P.inf) return true;
    Fp F(E.p);
    u64 lhs = F.mul(P.y, P.y);
    u64 rhs = F.add(F.mul(F.mul(P.x, P.x), P.x), F.add(F.mul(E.A, P.x), E.B));
    return lhs == rhs;
}

Point ec_neg(const Curve& E, const Point& P) {
    if (P.inf) return P;
    return {P.x, P.y ? E.p - P.y : 0, false};
}

Point ec_add(const Curve& E, const Point& P, const Point& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    Fp F(E.p);
    u64 lam;
    if (P.x == Q.x) {
        if (F.add(P.y, Q.y) == 0) return {};  // P = -Q
        lam = F.div(F.add(F.mul(3, F.mul(P.x, P.x)), E.A), F.mul(2, P.y));
    } else {
        lam = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x));
    }
    u64 x3 = F.sub(F.sub(F.mul(lam, lam), P.x), Q.x);
    u64 y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y);
    return {x3, y3, false};
}

Point ec_mul(const Curve& E, Int n, Point P) {
    if (n < 0) {
        n = -n;
        P = ec_neg(E, P);
    }
    Point R{};
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) R = ec_add(E, R, P);
        P = ec_add(E, P, P);
        n >>= 1;
    }
    return R;
}

Point random_point(const Curve& E, Rng& rng) {
    Fp F(E.p);
    for (;;) {
        u64 x = rng.below(E.p);
        u64 rhs = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(E.A, x), E.B));
        if (rhs == 0) return {x, 0, false};
        if (F.legendre(rhs) != 1) continue;
        u64 y = F.sqrt(rhs);
        // deterministic branch: pick the even representative
        if (y % 2) y = E.p - y;
        return {x, y, false};
    }
}

bool curve_is_singular(const Curve& E) {
    Fp F(E.p);
    u64 disc = F.add(F.mul(4, F.pow(E.A, 3)), F.mul(27, F.mul(E.B, E.B)));
    return disc == 0;
}

u64 j_invariant(const Curve& E) {
    Fp F(E.p);
    u64 a3 = F.mul(4, F.pow(E.A, 3));
    u64 den = F.add(a3, F.mul(27, F.mul(E.B, E.B)));
    if (den == 0) throw std::domain_error("j_invariant: singular curve");
    return F.div(F.mul(1728 % E.p, a3), den);
}

Curve curve_from_j(u64 j, u64 p) {
    Fp F(p);
    j %= p;
    if (j == 0 || j == 1728 % p)
        throw std::domain_error("curve_from_j: j in {0, 1728} excluded (extra automorphisms)");
    u64 k = F.div(j, F.sub(1728 % p, j));
    return {p, F.mul(3, k), F.mul(2, k)};
}

Curve quadratic_twist(const Curve& E) {
    Fp F(E.p);
    u64 c = 2;
    while (F.legendre(c) != E.p - 1) ++c;
    return {E.p, F.mul(E.A, F.mul(c, c)), F.mul(E.B, F.mul(c, F.mul(c, c)))};
}

Curve curve_with_cardinality(u64 j, const Int& m, u64 p, long t, Rng& rng, int samples) {
    Curve cand = curve_from_j(j, p);
    Int mprime = Int(static_cast<unsigned long>(p)) + 1 + t;  // the twist order
    for (int which = 0; which < 2; ++which) {
        Curve E = which ? quadratic_twist(cand) : cand;
        bool ok = true;
        bool distinguished = (m == mprime);
        for (int s = 0; s < samples && ok; ++s) {
            Point P = random_point(E, rng);
            if (!ec_mul(E, m, P).inf) ok = false;
            if (ok && !distinguished && !ec_mul(E, mprime, P).inf) distinguished = true;
        }
        // ambiguous samples (every point killed by both orders): draw more
        for (int extra = 0; ok && !distinguished && extra < 64; ++extra) {
            Point P = random_point(E, rng);
            if (!ec_mul(E, m, P).inf) { ok = false; break; }
            if (!ec_mul(E, mprime, P).inf) distinguished = true;
        }
        if (ok && (distinguished || m == mprime)) return E;
    }
    throw std::runtime_error("curve_with_cardinality: no candidate has the requested order");
}

Point random_l_torsion_point(const Curve& E, const Int& m, long ell, Rng& rng, int max_draws) {
    Int cof = m;
    int e = 0;
    while (cof % ell == 0) {
        cof /= ell;
        ++e;
    }
    if (e == 0) throw std::domain_error("random_l_torsion_point: ell does not divide m");
    for (int d = 0; d < max_draws; ++d) {
        Point P = random_point(E, rng);
        Point Q = ec_mul(E, cof, P);
        if (Q.inf) continue;
        // walk down to the order-ell layer
        for (;;) {
            Point R = ec_mul(E, ell, Q);
            if (R.inf) return Q;
            Q = R;
        }
    }
    throw std::runtime_error("random_l_torsion_point: no point of order ell found (wrong m?)");
}

IsogenyRecord velu_isogenous_curve(const Curve& E, const Point& Q, long ell) {
    Fp F(E.p);
    if (Q.inf || !ec_mul(E, ell, Q).inf)
        throw std::domain_error("velu_isogenous_curve: Q must have exact order ell");
    long d = (ell - 1) / 2;
    IsogenyRecord rec;
    Point R = Q;
    for (long i = 1; i <= d; ++i) {
        rec.kernel_xs.push_back(R.x);
        R = ec_add(E, R, Q);
    }
    std::sort(rec.kernel_xs.begin(), rec.kernel_xs.end());
    u64 k0 = F.reduce_int(d), k1 = 0, k2 = 0, k3 = 0;
    for (u64 x : rec.kernel_xs) {
        k1 = F.add(k1, x);
        u64 x2 = F.mul(x, x);
        k2 = F.add(k2, x2);
        k3 = F.add(k3, F.mul(x2, x));
    }
    rec.kappa0 = k0;
    rec.kappa1 = k1;
    rec.kappa2 = k2;
    rec.kappa3 = k3;
    rec.r = k1;
    rec.Astar = F.sub(E.A, F.mul(5, F.add(F.mul(6, k2), F.mul(2, F.mul(E.A, k0)))));
    rec.Bstar = F.sub(
        E.B, F.mul(7, F.add(F.mul(10, k3),
                            F.add(F.mul(6, F.mul(E.A, k1)), F.mul(4, F.mul(E.B, k0))))));
    rec.j_codomain = j_invariant({E.p, rec.Astar, rec.Bstar});
    return rec;
}

}  // namespace fricke
