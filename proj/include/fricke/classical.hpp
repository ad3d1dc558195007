#pragma once

#include "fricke/series.hpp"

namespace fricke {

namespace detail {

// Divisor power sums delta_r(n) for 1 <= n < T by sieve, as machine/big ints.
inline std::vector<Int> divisor_power_sums(int r, int T) {
    std::vector<Int> s(std::size_t(std::max(T, 1)), Int(0));
    for (int d = 1; d < T; ++d) {
        Int dr = int_pow(Int(d), unsigned(r));
        for (int m = d; m < T; m += d) s[std::size_t(m)] += dr;
    }
    return s;
}

// delta'_1(n): sum of divisors of n prime to ell.
inline std::vector<Int> divisor_sums_prime_to(int ell, int T) {
    std::vector<Int> s(std::size_t(std::max(T, 1)), Int(0));
    for (int d = 1; d < T; ++d) {
        if (d % ell == 0) continue;
        for (int m = d; m < T; m += d) s[std::size_t(m)] += d;
    }
    return s;
}

}  // namespace detail

// E_{2k} for k in {1,2,3}: E2 = 1 - 24 sum delta_1 q^n, E4 = 1 + 240 sum delta_3,
// E6 = 1 - 504 sum delta_5.
template <class R>
Series<R> eisenstein_series(int k, int T, R ring) {
    if (k < 1 || k > 3) throw std::invalid_argument("eisenstein_series: k must be 1, 2 or 3");
    static const long mult[4] = {0, -24, 240, -504};
    auto d = detail::divisor_power_sums(2 * k - 1, T);
    Series<R> s(ring, T);
    if (T > 0) s.c[0] = ring.one();
    auto m = ring.from_long(mult[k]);
    for (int n = 1; n < T; ++n) s.c[std::size_t(n)] = ring.mul(m, ring.from_int(d[std::size_t(n)]));
    return s;
}

// Delta = (E4^3 - E6^2)/1728 = eta^24. Computed via the eta product
// q prod (1-q^n)^24 so it works verbatim over Z (no division).
template <class R>
Series<R> delta_series(int T, R ring) {
    // (q;q)_infty = sum_n (-1)^n q^{n(3n-1)/2} + q^{n(3n+1)/2} (Euler), then ^24, shift by q.
    Series<R> e(ring, T);
    if (T > 0) e.c[0] = ring.one();
    for (int n = 1;; ++n) {
        long a = (long(n) * (3 * n - 1)) / 2;
        long b = (long(n) * (3 * n + 1)) / 2;
        if (a >= T && b >= T) break;
        auto s = (n % 2) ? ring.from_long(-1) : ring.one();
        if (a < T) e.c[std::size_t(a)] = ring.add(e.c[std::size_t(a)], s);
        if (b < T) e.c[std::size_t(b)] = ring.add(e.c[std::size_t(b)], s);
    }
    // e^24 by squaring: e2=e^2, e4, e8, e16, e24=e16*e8
    Series<R> e2 = e * e, e4 = e2 * e2, e8 = e4 * e4, e16 = e8 * e8, e24 = e16 * e8;
    Series<R> r(ring, T);
    for (int n = 1; n < T; ++n) r.c[std::size_t(n)] = e24.c[std::size_t(n - 1)];
    return r;
}

// j = E4^3 / Delta = 1/q + 744 + ...  (Laurent with v0 = -1)
template <class R>
Series<R> j_series(int T, R ring) {
    int M = T + 2;
    auto e4 = eisenstein_series(2, M, ring);
    auto num = e4 * e4 * e4;
    auto del = delta_series(M, ring);
    // Delta/q is a unit with constant term 1
    Series<R> delq(ring, M - 1);
    for (int n = 0; n + 1 < del.order(); ++n) delq.c[std::size_t(n)] = del.c[std::size_t(n + 1)];
    auto invd = inverse(delq, M - 1);
    auto prod = num * invd;  // = j * q, order M-1
    Series<R> r(ring, -1, T);
    for (int n = -1; n < T; ++n)
        if (n + 1 < prod.order()) r.c[std::size_t(n + 1)] = prod.c[std::size_t(n + 1)];
    return r;
}

// -ell * F_ell = ell(ell-1) + 24 ell sum delta'_1(n) q^n   (= 2 kappa_1)
template <class R>
Series<R> fell_series(int ell, int T, R ring) {
    auto d = detail::divisor_sums_prime_to(ell, T);
    Series<R> s(ring, T);
    if (T > 0) s.c[0] = ring.from_long(long(ell) * (ell - 1));
    auto m = ring.from_long(24L * ell);
    for (int n = 1; n < T; ++n) s.c[std::size_t(n)] = ring.mul(m, ring.from_int(d[std::size_t(n)]));
    return s;
}

// G = F_ell / 2, integral for odd ell: the distinguished root of U_ell is -ell*G = kappa_1.
template <class R>
Series<R> half_multiplier_series(int ell, int T, R ring) {
    auto d = detail::divisor_sums_prime_to(ell, T);
    Series<R> s(ring, T);
    if (T > 0) s.c[0] = ring.div(ring.from_long(1L - ell), ring.from_long(2));
    auto m = ring.from_long(-12L);
    for (int n = 1; n < T; ++n) s.c[std::size_t(n)] = ring.mul(m, ring.from_int(d[std::size_t(n)]));
    return s;
}

}  // namespace fricke
