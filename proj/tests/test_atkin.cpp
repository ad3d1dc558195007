#include "doctest.h"
#include "fricke/atkin.hpp"
#include "fricke/classical.hpp"
#include "fricke/fpx.hpp"
#include "fricke/fricke_series.hpp"
#include "fricke/volcano.hpp"

using namespace fricke;

namespace {

// evaluate an XE46Poly at series arguments over Q
Series<QQ> eval_series(const XE46Poly& P, const Series<QQ>& X, const Series<QQ>& e4,
                       const Series<QQ>& e6, int T) {
    QQ ring;
    std::map<int, Series<QQ>> xp, p4, p6;
    auto getp = [&](std::map<int, Series<QQ>>& tab, const Series<QQ>& base, int e) {
        auto it = tab.find(e);
        if (it != tab.end()) return it->second;
        Series<QQ> v = series_one(ring, T);
        for (int i = 0; i < e; ++i) v = v * base;
        tab.emplace(e, v);
        return v;
    };
    Series<QQ> acc(ring, T);
    for (const auto& [m, c] : P.monomials)
        acc = acc + (getp(xp, X, m.r) * getp(p4, e4, m.a4) * getp(p6, e6, m.a6)).scaled(c);
    return acc;
}

// tiny dense bivariate polynomials in (E2, E6t) over F_p for the script-mirror
// re-derivation of the Etilde6 closed form
struct BPoly {
    Fp F;
    // coeff[i][j] of E2^i E6t^j, i <= 4, j <= 1
    u64 c[5][2] = {};
    explicit BPoly(Fp f) : F(f) {}
    static BPoly constant(Fp f, u64 v) {
        BPoly p(f);
        p.c[0][0] = v % f.p;
        return p;
    }
    static BPoly e2(Fp f) {
        BPoly p(f);
        p.c[1][0] = 1;
        return p;
    }
    static BPoly e6t(Fp f) {
        BPoly p(f);
        p.c[0][1] = 1;
        return p;
    }
    BPoly operator+(const BPoly& o) const {
        BPoly r(F);
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 1; ++j) r.c[i][j] = F.add(c[i][j], o.c[i][j]);
        return r;
    }
    BPoly operator-(const BPoly& o) const {
        BPoly r(F);
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 1; ++j) r.c[i][j] = F.sub(c[i][j], o.c[i][j]);
        return r;
    }
    BPoly operator*(const BPoly& o) const {
        BPoly r(F);
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 1; ++j) {
                if (!c[i][j]) continue;
                for (int k = 0; i + k <= 4; ++k)
                    for (int l = 0; j + l <= 1; ++l) {
                        if (!o.c[k][l]) continue;
                        r.c[i + k][j + l] = F.add(r.c[i + k][j + l], F.mul(c[i][j], o.c[k][l]));
                    }
            }
        return r;
    }
    BPoly scale(u64 v) const {
        BPoly r(F);
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 1; ++j) r.c[i][j] = F.mul(c[i][j], v % F.p);
        return r;
    }
    BPoly div_long(long v) const { return scale(F.inv(F.reduce_int(v))); }
};

}  // namespace

TEST_SUITE_BEGIN("atkin");

TEST_CASE("section 6.3 worked example over F_1009") {
    u64 p = 1009;
    Fp F(p);
    auto U = compute_fricke_polynomial(5, Family::U);
    u64 e4 = F.div(F.neg(1), 3);  // A = 1
    u64 e6 = F.div(F.neg(3), 2);  // B = 3
    auto ps = partials_at(U, 584, e4, e6, p);
    CHECK(ps.u == 0);  // kappa = 584 is a root
    CHECK(ps.dk == 905);
    CHECK(ps.d4 == 779);
    CHECK(ps.d6 == 140);
    u64 et4 = e4_tilde(5, 584, e4, e6, ps, p);
    CHECK(et4 == 497);
    CHECK(F.neg(F.mul(3, F.mul(F.pow(5, 4), et4))) == 441);  // A* = 441
    u64 et6 = e6_tilde(5, 584, e4, e6, ps, p);
    CHECK(F.neg(F.mul(2, F.mul(F.pow(5, 6), et6))) == 997);  // B* = 997
}

TEST_CASE("isogenous_from_U on the section-6.3 curve") {
    auto U = compute_fricke_polynomial(5, Family::U);
    Rng rng(3);
    auto out = isogenous_from_U(5, 1, 3, 1009, U, rng);
    bool found = false;
    for (const auto& c : out) {
        if (c.kappa == 584) {
            found = true;
            CHECK_FALSE(c.degenerate);
            CHECK(c.Astar == 441);
            CHECK(c.Bstar == 997);
            CHECK(c.kappa1 == 292);
        }
    }
    CHECK(found);
    // root count in {0, 1, 2, ell+1}
    CHECK((out.size() == 0 || out.size() == 1 || out.size() == 2 || out.size() == 6));
    CHECK_THROWS(isogenous_from_U(5, 0, 1, 1009, U, rng));  // j = 0 excluded
}

TEST_CASE("Euler and second-order homogeneity identities as exact polynomials") {
    for (long ell : {2L, 3L, 5L, 7L, 11L, 13L}) {
        auto U = compute_fricke_polynomial(ell, Family::U);
        auto u = substitute_delta(U);
        auto dk = xe46_partial(u, 0), d4 = xe46_partial(u, 1), d6 = xe46_partial(u, 2);
        auto X = xe46_monomial(1, 0, 0), E4 = xe46_monomial(0, 1, 0), E6 = xe46_monomial(0, 0, 1);
        // (ell+1) U = kappa dk + 2 E4 d4 + 3 E6 d6
        auto euler = u.scaled(Rat(ell + 1)) - (X * dk + (E4 * d4).scaled(2) + (E6 * d6).scaled(3));
        CHECK(euler.is_zero());
        auto dkk = xe46_partial(dk, 0), dk4 = xe46_partial(dk, 1), dk6 = xe46_partial(dk, 2);
        auto d44 = xe46_partial(d4, 1), d46 = xe46_partial(d4, 2), d66 = xe46_partial(d6, 2);
        // ell dk = k dkk + 2 E4 dk4 + 3 E6 dk6
        CHECK((dk.scaled(Rat(ell)) - (X * dkk + (E4 * dk4).scaled(2) + (E6 * dk6).scaled(3)))
                  .is_zero());
        // (ell-1) d4 = k dk4 + 2 E4 d44 + 3 E6 d46
        CHECK((d4.scaled(Rat(ell - 1)) - (X * dk4 + (E4 * d44).scaled(2) + (E6 * d46).scaled(3)))
                  .is_zero());
        // (ell-2) d6 = k dk6 + 2 E4 d46 + 3 E6 d66
        CHECK((d6.scaled(Rat(ell - 2)) - (X * dk6 + (E4 * d46).scaled(2) + (E6 * d66).scaled(3)))
                  .is_zero());
    }
}

TEST_CASE("Euler residual vanishes pointwise; at a root the gradient form is 0") {
    u64 p = 999983;
    Fp F(p);
    auto U = compute_fricke_polynomial(7, Family::U);
    auto ap = atkin_reduce(U, p);
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        u64 k = rng.below(p), e4 = rng.below(p), e6 = rng.below(p);
        auto ps = partials_at(ap, k, e4, e6);
        u64 lhs = F.mul(F.reduce_int(8), ps.u);
        u64 rhs = F.add(F.mul(k, ps.dk), F.add(F.mul(2, F.mul(e4, ps.d4)),
                                               F.mul(3, F.mul(e6, ps.d6))));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("series self-test: the closed forms reproduce E4(q^l) and E6(q^l)") {
    // guards the c2 transcription: evaluated on q-series, the formulas must
    // give back the dilated Eisenstein series exactly
    QQ ring;
    for (long ell : {5L, 7L}) {
        int T = 9;
        auto U = compute_fricke_polynomial(ell, Family::U);
        auto u = substitute_delta(U);
        auto dkP = xe46_partial(u, 0), d4P = xe46_partial(u, 1), d6P = xe46_partial(u, 2);
        auto dkkP = xe46_partial(dkP, 0), dk4P = xe46_partial(dkP, 1), dk6P = xe46_partial(dkP, 2);
        auto d44P = xe46_partial(d4P, 1), d46P = xe46_partial(d4P, 2), d66P = xe46_partial(d6P, 2);
        auto e4 = eisenstein_series(2, T, ring);
        auto e6 = eisenstein_series(3, T, ring);
        auto X = half_multiplier_series(int(ell), T, ring).scaled_long(-ell);
        auto dk = eval_series(dkP, X, e4, e6, T);
        auto d4 = eval_series(d4P, X, e4, e6, T);
        auto d6 = eval_series(d6P, X, e4, e6, T);
        auto dkk = eval_series(dkkP, X, e4, e6, T);
        auto dk4 = eval_series(dk4P, X, e4, e6, T);
        auto dk6 = eval_series(dk6P, X, e4, e6, T);
        auto d44 = eval_series(d44P, X, e4, e6, T);
        auto d46 = eval_series(d46P, X, e4, e6, T);
        auto d66 = eval_series(d66P, X, e4, e6, T);
        CHECK(eval_series(u, X, e4, e6, T).is_zero());

        auto e4sq = e4 * e4;
        // E4 tilde
        auto num = dk * (e4.scaled_long(ell * ell) + (X * X).scaled_long(4)) -
                   ((e4sq * d6).scaled_long(3) + (e6 * d4).scaled_long(2)).scaled_long(4 * ell);
        auto den = dk.scaled(Rat(int_pow(Int(ell), 4)));
        auto E4t = num * inverse(den, T);
        int small = (T + int(ell)) / int(ell) + 1;
        auto want4 = dilate(eisenstein_series(2, small, ring), int(ell), T);
        CHECK(E4t == want4);

        // E6 tilde via N and c2
        auto c2 = ((d6 * d6 * dkk - (d6 * dk * dk6).scaled_long(2) + d66 * dk * dk)
                       .scaled_long(18)) *
                  (e4sq * e4sq);
        c2 = c2 + ((e6 * d4 * (d6 * dkk - dk * dk6)).scaled_long(24) +
                   (e6 * dk * (d46 * dk - d6 * dk4)).scaled_long(24) +
                   (d4 * dk * dk).scaled_long(10)) *
                      e4sq;
        c2 = c2 + (dk * dk * ((e6 * d6).scaled_long(7) - X * dk)).scaled_long(3) * e4;
        c2 = c2 + ((d4 * d4 * dkk - (d4 * dk * dk4).scaled_long(2) + d44 * dk * dk)
                       .scaled_long(8)) *
                      (e6 * e6);
        auto dk3 = dk * dk * dk;
        auto inner = (e4sq * d6).scaled_long(3) + (e6 * d4).scaled_long(2);
        auto N = (e6 * dk3).scaled(Rat(-int_pow(Int(ell), 3))) + c2.scaled(Rat(ell * ell)) +
                 (dk * dk * X * inner).scaled_long(12 * ell) - (dk3 * X * X * X).scaled_long(8);
        auto E6t = N.scaled_long(-1) * inverse(dk3.scaled(Rat(int_pow(Int(ell), 6))), T);
        auto want6 = dilate(eisenstein_series(3, small, ring), int(ell), T);
        CHECK(E6t == want6);
    }
}

TEST_CASE("script-mirror re-derivation over a random prime: C1 = C2 = 0 and E6t") {
    u64 p = 1000003;
    Fp F(p);
    Rng rng(123);
    for (long ell : {5L, 7L}) {
        auto U = compute_fricke_polynomial(ell, Family::U);
        auto ap = atkin_reduce(U, p);
        // find (e4, e6) for which U(X, e4, e6) has a root with dk != 0
        u64 e4 = 0, e6 = 0, kappa = 0;
        PartialSet ps;
        for (;;) {
            e4 = 1 + rng.below(p - 1);
            e6 = 1 + rng.below(p - 1);
            fpx::Poly f(std::size_t(ell + 2), 0);
            for (const auto& [m, c] : ap.monomials) {
                u64 t = F.mul(c, F.pow(e4, u64(m.a4)));
                t = F.mul(t, F.pow(e6, u64(m.a6)));
                f[std::size_t(m.r)] = F.add(f[std::size_t(m.r)], t);
            }
            auto rs = fpx::roots(F, fpx::normalize(std::move(f)), rng);
            if (rs.empty()) continue;
            kappa = rs[0];
            if (kappa == 0) continue;
            ps = partials_at(ap, kappa, e4, e6);
            if (ps.dk != 0) break;
        }
        // the script's construction, with (E2, E6t) symbolic and all partials
        // as concrete values
        u64 L = F.reduce_int(ell);
        auto C = [&](u64 v) { return BPoly::constant(F, v); };
        auto E2 = BPoly::e2(F), E6t = BPoly::e6t(F);
        auto E4p = (E2.scale(e4) - C(e6)).div_long(3);
        auto E6p = (E2.scale(e6) - C(F.mul(e4, e4))).div_long(2);
        auto E2p = (E2 * E2 - C(e4)).div_long(12);
        auto E2t = (E2 + C(F.div(F.mul(2, kappa), L))).div_long(long(ell));
        u64 e4t = e4_tilde(ell, kappa, e4, e6, ps, p);
        u64 sig2 = F.mul(kappa, kappa);
        auto sigp = (C(F.div(F.mul(4, sig2), F.mul(L, L))) +
                     E2.scale(F.div(F.mul(4, kappa), L)) -
                     C(F.sub(F.mul(F.mul(L, L), e4t), e4)))
                        .scale(L)
                        .div_long(24);
        auto E4pp = (E2p.scale(e4) + E2 * E4p - E6p).div_long(3);
        auto E6pp = (E2p.scale(e6) + E2 * E6p - E4p.scale(F.mul(2, e4))).div_long(2);
        auto E4tp = (E2t.scale(e4t) - E6t).div_long(3);
        auto E2tp = (E2t * E2t - C(e4t)).div_long(12);
        auto E2pp = (E2 * E2p.scale(2) - E4p).div_long(12);
        auto E2tpp = (E2t * E2tp.scale(2) - E4tp).div_long(12);
        auto sigpp = (E2tpp.scale(F.pow(L, 3)) - E2pp).scale(L).div_long(2);
        auto tmp = sigpp.scale(ps.dk) +
                   sigp * (sigp.scale(ps.dkk) + E4p.scale(ps.dk4) + E6p.scale(ps.dk6));
        tmp = tmp + E4pp.scale(ps.d4) +
              E4p * (sigp.scale(ps.dk4) + E4p.scale(ps.d44) + E6p.scale(ps.d46));
        tmp = tmp + E6pp.scale(ps.d6) +
              E6p * (sigp.scale(ps.dk6) + E4p.scale(ps.d46) + E6p.scale(ps.d66));
        // coefficients C2 (of E2^2) and C1 (of E2^1) vanish at a root of U
        CHECK(tmp.c[3][0] == 0);
        CHECK(tmp.c[3][1] == 0);
        CHECK(tmp.c[2][0] == 0);
        CHECK(tmp.c[2][1] == 0);
        CHECK(tmp.c[1][0] == 0);
        CHECK(tmp.c[1][1] == 0);
        // C0 is linear in E6t; solving gives the closed form's value
        REQUIRE(tmp.c[0][1] != 0);
        u64 e6t_script = F.div(F.neg(tmp.c[0][0]), tmp.c[0][1]);
        CHECK(e6t_script == e6_tilde(ell, kappa, e4, e6, ps, p));
    }
}

TEST_CASE("cross-method: isogenous_from_U matches every volcano record") {
    auto hd = load_class_polynomial(std::string(FRICKE_DATA_DIR) + "/hd/D-71.txt");
    auto params = find_volcano_prime(5, -71, hd.h, 1500, 5000);
    Rng rng(55);
    auto sites = partial_volcano(params, hd, rng);
    auto U = compute_fricke_polynomial(5, Family::U);
    Fp F(params.p);
    for (const auto& site : sites) {
        auto out = isogenous_from_U(5, site.E.A, site.E.B, params.p, U, rng);
        REQUIRE(out.size() == 6);  // all ell+1 isogenies rational on the crater
        std::map<u64, std::pair<u64, u64>> got;
        for (const auto& c : out) {
            REQUIRE_FALSE(c.degenerate);
            got[c.kappa] = {c.Astar, c.Bstar};
        }
        for (const auto& rec : site.iso) {
            REQUIRE(got.count(rec.r) == 1);
            CHECK(got[rec.r].first == rec.Astar);
            CHECK(got[rec.r].second == rec.Bstar);
        }
    }
}

TEST_SUITE_END();
