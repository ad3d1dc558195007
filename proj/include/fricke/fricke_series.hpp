#pragma once

#include <functional>
#include <numeric>

#include "fricke/classical.hpp"
#include "fricke/cosets.hpp"
#include "fricke/formbasis.hpp"
#include "fricke/newton.hpp"
#include "fricke/tripoly.hpp"

namespace fricke {

enum class FormTag { E4, E6, Delta };

int form_weight(FormTag f);

// Power sums of the scaled conjugates, developed to order T each.
template <class R>
struct PowerSums {
    long N = 0;
    int weight_w = 2;
    std::vector<Series<R>> sigma;  // sigma_1 .. sigma_{deg}
};

// U-family: roots are kappa_1(q) = -ell*G and G(z zeta^h) with G = F_ell/2, so
// sigma_t = (-ell G)^t + decimate(G^t, ell, 1). Inputs are developed to ell*T
// for the decimation, the (-ell G)-powers only to T.
template <class R>
PowerSums<R> power_sums_U(long ell, int T, R ring) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("power_sums_U: need odd prime ell");
    int big = int(ell) * T;
    auto G = half_multiplier_series(int(ell), big, ring);
    auto mlG = G.truncated(T).scaled_long(-ell);
    PowerSums<R> ps;
    ps.N = ell;
    ps.weight_w = 2;
    auto a = series_one(ring, T);
    auto b = series_one(ring, big);
    for (long t = 1; t <= ell + 1; ++t) {
        a = a * mlG;
        b = b * G;
        ps.sigma.push_back(a + decimate(b, int(ell), 1).truncated(T));
    }
    return ps;
}

// Phi[f(N tau)]-family: S_t = sum_{D|N} (N/D)^{wt} S_{D,t} with
// S_{D,t} = sum_{e | gcd(A,D)} mu(e) * decimate(f^t, D/e, A/e), A = N/D.
// (The Moebius sum restricts the B-sum to gcd(A,B,D) = 1; it collapses to a
// single decimation for squarefree N.)
template <class R>
PowerSums<R> power_sums_fN(FormTag tag, long N, int T, R ring) {
    if (N < 2) throw std::invalid_argument("power_sums_fN: need N >= 2");
    int w = form_weight(tag);
    int big = int(N) * T;
    Series<R> f = tag == FormTag::E4   ? eisenstein_series(2, big, ring)
                  : tag == FormTag::E6 ? eisenstein_series(3, big, ring)
                                       : delta_series(big, ring);
    long deg = psi(N);
    std::vector<long> divisors;
    for (long D = 1; D <= N; ++D)
        if (N % D == 0) divisors.push_back(D);
    auto mu = [](long n) {
        int m = 1;
        for (long p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
        if (n > 1) m = -m;
        return m;
    };
    PowerSums<R> ps;
    ps.N = N;
    ps.weight_w = w;
    auto fpow = series_one(ring, big);
    for (long t = 1; t <= deg; ++t) {
        fpow = fpow * f;
        Series<R> st(ring, T);
        for (long D : divisors) {
            long A = N / D;
            auto scale = ring.from_int(int_pow(Int(N / D), unsigned(w * t)));
            Series<R> sdt(ring, T);
            long g = std::gcd(A, D);
            for (long e = 1; e <= g; ++e) {
                if (g % e) continue;
                int me = mu(e);
                if (!me) continue;
                auto part = decimate(fpow, int(D / e), int(A / e)).truncated(T);
                sdt = (me > 0) ? sdt + part : sdt - part;
            }
            st = st + sdt.scaled(scale);
        }
        ps.sigma.push_back(st);
    }
    return ps;
}

namespace detail {

// Newton over polynomial values stored as monomial maps.
template <class R>
struct MonoMapOps {
    R ring;
    using V = std::map<Mono4, typename R::Elem>;
    static void canon(const R& ring, V& v) {
        // E6^2 = E4^3 - 1728 Delta
        bool again = true;
        while (again) {
            again = false;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (it->first.i6 < 2) continue;
                Mono4 m = it->first;
                auto c = it->second;
                v.erase(it);
                Mono4 m1{m.r, m.i4 + 3, m.i6 - 2, m.i12};
                Mono4 m2{m.r, m.i4, m.i6 - 2, m.i12 + 1};
                add_to(ring, v, m1, c);
                add_to(ring, v, m2, ring.mul(c, ring.from_long(-1728)));
                again = true;
                break;
            }
        }
    }
    static void add_to(const R& ring, V& v, const Mono4& m, const typename R::Elem& c) {
        if (ring.is_zero(c)) return;
        auto it = v.find(m);
        if (it == v.end()) {
            v.emplace(m, c);
        } else {
            it->second = ring.add(it->second, c);
            if (ring.is_zero(it->second)) v.erase(it);
        }
    }
    V add(const V& a, const V& b) const {
        V r = a;
        for (const auto& [m, c] : b) add_to(ring, r, m, c);
        return r;
    }
    V mul(const V& a, const V& b) const {
        V r;
        for (const auto& [m1, c1] : a)
            for (const auto& [m2, c2] : b)
                add_to(ring, r, {m1.r + m2.r, m1.i4 + m2.i4, m1.i6 + m2.i6, m1.i12 + m2.i12},
                       ring.mul(c1, c2));
        canon(ring, r);
        return r;
    }
    V neg(const V& a) const {
        V r;
        for (const auto& [m, c] : a) r.emplace(m, ring.neg(c));
        return r;
    }
    V mul_long(const V& a, long k) const {
        V r;
        auto kk = ring.from_long(k);
        for (const auto& [m, c] : a) add_to(ring, r, m, ring.mul(c, kk));
        return r;
    }
    V div_long(const V& a, long k) const {
        if (!ring.invertible_long(k)) throw std::domain_error("newton: k not invertible in ring");
        V r;
        for (const auto& [m, c] : a) r.emplace(m, ring.div(c, ring.from_long(k)));
        return r;
    }
};

// Express every sigma_t as a polynomial in (E4, E6, Delta), then Newton.
// Returns coefficient maps cs[t-1] = coefficient of X^{deg-t}.
template <class R>
std::vector<std::map<Mono4, typename R::Elem>> assemble_coefficients(const PowerSums<R>& ps,
                                                                     R ring,
                                                                     long root_scale_num = 1) {
    using V = std::map<Mono4, typename R::Elem>;
    int T = ps.sigma.empty() ? 1 : ps.sigma[0].order();
    auto e4 = eisenstein_series(2, T, ring);
    auto e6 = eisenstein_series(3, T, ring);
    auto del = delta_series(T, ring);
    long deg = long(ps.sigma.size());
    std::vector<V> psums;
    auto scale_pow = ring.one();
    for (long t = 1; t <= deg; ++t) {
        if (root_scale_num != 1) scale_pow = ring.mul(scale_pow, ring.from_long(root_scale_num));
        auto st = ps.sigma[std::size_t(t - 1)];
        if (root_scale_num != 1) st = st.scaled(scale_pow);
        long wt = long(ps.weight_w) * t;
        V v;
        if (wt == 2) {
            if (!st.is_zero()) throw std::domain_error("assemble: nonzero weight-2 power sum");
        } else {
            auto basis = build_basis(int(wt), e4, e6, del);
            auto cs = express_form(st, basis);
            for (std::size_t j = 0; j < cs.size(); ++j) {
                if (ring.is_zero(cs[j])) continue;
                v.emplace(Mono4{0, basis.m - 3 * int(j), basis.eps, int(j)}, cs[j]);
            }
        }
        psums.push_back(std::move(v));
    }
    MonoMapOps<R> ops{ring};
    return newton_to_coefficients(psums, int(deg), ops);
}

}  // namespace detail

// ---- exact drivers (fricke_series.cpp) ----

// U/V/W via exact q-expansions (rational path; integral for ell > 3).
TriPoly compute_fricke_polynomial(long ell, Family fam, int order_guard = 4);

// Same polynomial mod a word-size prime p > max(psi(ell), 3).
TriPolyMod compute_fricke_polynomial_mod(long ell, Family fam, u64 p, int order_guard = 4);

// Mod small primes + CRT; identical output to the exact path.
TriPoly compute_fricke_polynomial_crt(long ell, Family fam, int order_guard = 4, int jobs = 1,
                                      bool verify_extra_prime = true);

// Exact path for ell <= 37, CRT beyond.
TriPoly compute_fricke_polynomial_auto(long ell, Family fam, int order_guard = 4, int jobs = 1);

// Phi[f(N tau)] for general N >= 2 (unscaled conjugates, monic of degree psi(N)).
TriPoly compute_phi_general(long N, FormTag tag, int order_guard = 4);

// Numerators (A_ell, B_ell) from U_ell via the series linear system of the
// rational-fraction representation. Exact over Q; integral for ell > 3.
std::pair<ABPoly, ABPoly> compute_numerators_series(long ell, const TriPoly& U);

// Working order for the power-sum stage: ceil(w*(ell+1)/12) + guard.
int working_order(int w, long deg, int order_guard);

}  // namespace fricke
