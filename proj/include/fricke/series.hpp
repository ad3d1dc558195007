#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "fricke/rings.hpp"

namespace fricke {

// Truncated q-expansion over an exact ring. Coefficients cover q^{v0} ... q^{order-1};
// v0 is 0 except for j-type Laurent series where it may be -1. Arithmetic never
// extends precision: results carry the min of the operand orders.
template <class R>
struct Series {
    using Elem = typename R::Elem;

    R ring;
    int v0 = 0;
    std::vector<Elem> c;  // c[i] is the coefficient of q^{v0+i}

    Series(R rg, int order) : ring(rg), v0(0), c(std::size_t(std::max(order, 0)), rg.zero()) {}
    Series(R rg, int lead, int order)
        : ring(rg), v0(lead), c(std::size_t(std::max(order - lead, 0)), rg.zero()) {}

    int order() const { return v0 + int(c.size()); }

    const Elem& coeff(int n) const {
        static const Elem z{};
        if (n < v0 || n >= order()) throw std::out_of_range("Series::coeff");
        return c[std::size_t(n - v0)];
    }
    void set(int n, Elem v) { c.at(std::size_t(n - v0)) = std::move(v); }

    bool is_zero() const {
        for (const auto& x : c)
            if (!ring.is_zero(x)) return false;
        return true;
    }

    Series truncated(int T) const {
        Series r(ring, v0, std::min(T, order()));
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = c[i];
        return r;
    }

    friend Series operator+(const Series& a, const Series& b) {
        int lead = std::min(a.v0, b.v0);
        int T = std::min(a.order(), b.order());
        Series r(a.ring, lead, T);
        for (int n = lead; n < T; ++n) {
            Elem s = a.ring.zero();
            if (n >= a.v0) s = a.ring.add(s, a.c[std::size_t(n - a.v0)]);
            if (n >= b.v0) s = a.ring.add(s, b.c[std::size_t(n - b.v0)]);
            r.c[std::size_t(n - lead)] = std::move(s);
        }
        return r;
    }

    friend Series operator-(const Series& a, const Series& b) {
        int lead = std::min(a.v0, b.v0);
        int T = std::min(a.order(), b.order());
        Series r(a.ring, lead, T);
        for (int n = lead; n < T; ++n) {
            Elem s = a.ring.zero();
            if (n >= a.v0) s = a.ring.add(s, a.c[std::size_t(n - a.v0)]);
            if (n >= b.v0) s = a.ring.sub(s, b.c[std::size_t(n - b.v0)]);
            r.c[std::size_t(n - lead)] = std::move(s);
        }
        return r;
    }

    Series scaled(const Elem& k) const {
        Series r(ring, v0, order());
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = ring.mul(c[i], k);
        return r;
    }
    Series scaled_long(long k) const { return scaled(ring.from_long(k)); }

    bool operator==(const Series& o) const {
        int lead = std::min(v0, o.v0);
        int T = std::min(order(), o.order());
        for (int n = lead; n < T; ++n) {
            Elem a = (n >= v0) ? c[std::size_t(n - v0)] : ring.zero();
            Elem b = (n >= o.v0) ? o.c[std::size_t(n - o.v0)] : ring.zero();
            if (!ring.eq(a, b)) return false;
        }
        return true;
    }
};

namespace detail {

// Schoolbook product of coefficient vectors, truncated to n terms.
template <class R>
void mul_schoolbook(const R& ring, const std::vector<typename R::Elem>& a,
                    const std::vector<typename R::Elem>& b,
                    std::vector<typename R::Elem>& out, std::size_t n) {
    out.assign(n, ring.zero());
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (ring.is_zero(a[i])) continue;
        std::size_t jmax = std::min(b.size(), n - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            out[i + j] = ring.add(out[i + j], ring.mul(a[i], b[j]));
        }
    }
}

// Delayed-reduction schoolbook over F_p: accumulate blocks of products in
// 128 bits, reducing every `block` terms (512 for p < 2^59, 8 up to 2^62).
inline void mul_schoolbook(const GF& ring, const std::vector<u64>& a, const std::vector<u64>& b,
                           std::vector<u64>& out, std::size_t n) {
    const u64 p = ring.p();
    const int block = p < (u64(1) << 59) ? 512 : 8;
    out.assign(n, 0);
    std::size_t na = std::min(a.size(), n), nb = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t ilo = (k + 1 > nb) ? (k + 1 - nb) : 0;
        std::size_t ihi = std::min(na, k + 1);
        u128 acc = 0;
        int cnt = 0;
        for (std::size_t i = ilo; i < ihi; ++i) {
            acc += (u128)a[i] * b[k - i];
            if (++cnt == block) {
                acc %= p;
                cnt = 0;
            }
        }
        out[k] = u64(acc % p);
    }
}

template <class R>
std::vector<typename R::Elem> mul_karatsuba(const R& ring,
                                            std::vector<typename R::Elem> a,
                                            std::vector<typename R::Elem> b,
                                            std::size_t n);

// Dispatch: Karatsuba pays off for big exact-ring operands; GF uses the
// cache-friendly delayed-reduction loop.
template <class R>
void mul_coeffs(const R& ring, const std::vector<typename R::Elem>& a,
                const std::vector<typename R::Elem>& b,
                std::vector<typename R::Elem>& out, std::size_t n) {
    constexpr std::size_t kKaratsubaCutoff = 96;
    if constexpr (std::is_same_v<R, GF>) {
        mul_schoolbook(ring, a, b, out, n);
    } else {
        if (n >= kKaratsubaCutoff && a.size() >= kKaratsubaCutoff / 2 && b.size() >= kKaratsubaCutoff / 2)
            out = mul_karatsuba(ring, a, b, n);
        else
            mul_schoolbook(ring, a, b, out, n);
    }
}

template <class R>
std::vector<typename R::Elem> mul_karatsuba(const R& ring,
                                            std::vector<typename R::Elem> a,
                                            std::vector<typename R::Elem> b,
                                            std::size_t n) {
    using E = typename R::Elem;
    a.resize(std::min(a.size(), n), ring.zero());
    b.resize(std::min(b.size(), n), ring.zero());
    if (a.size() < 32 || b.size() < 32) {
        std::vector<E> out;
        mul_schoolbook(ring, a, b, out, n);
        return out;
    }
    std::size_t h = (std::max(a.size(), b.size()) + 1) / 2;
    auto lo = [&](const std::vector<E>& v) {
        return std::vector<E>(v.begin(), v.begin() + std::ptrdiff_t(std::min(h, v.size())));
    };
    auto hi = [&](const std::vector<E>& v) {
        if (v.size() <= h) return std::vector<E>{};
        return std::vector<E>(v.begin() + std::ptrdiff_t(h), v.end());
    };
    auto vsum = [&](std::vector<E> x, const std::vector<E>& y) {
        if (x.size() < y.size()) x.resize(y.size(), ring.zero());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = ring.add(x[i], y[i]);
        return x;
    };
    std::vector<E> a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    std::vector<E> z0 = mul_karatsuba(ring, a0, b0, n);
    // z2 feeds both the 2h offset and the middle correction, so truncate at n-h
    std::vector<E> z2 = (a1.empty() || b1.empty() || h >= n)
                            ? std::vector<E>{}
                            : mul_karatsuba(ring, a1, b1, n - h);
    std::vector<E> zm = (h >= n) ? std::vector<E>{}
                                 : mul_karatsuba(ring, vsum(a0, a1), vsum(b0, b1), n - h);
    std::vector<E> out(n, ring.zero());
    for (std::size_t i = 0; i < z0.size() && i < n; ++i) out[i] = ring.add(out[i], z0[i]);
    for (std::size_t i = 0; i < zm.size() && i + h < n; ++i) {
        E t = zm[i];
        if (i < z0.size()) t = ring.sub(t, z0[i]);
        if (i < z2.size()) t = ring.sub(t, z2[i]);
        out[i + h] = ring.add(out[i + h], t);
    }
    for (std::size_t i = 0; i < z2.size() && i + 2 * h < n; ++i)
        out[i + 2 * h] = ring.add(out[i + 2 * h], z2[i]);
    return out;
}

}  // namespace detail

// Multiplication of series with negative leading exponent is reserved for
// j-type uses: the result order follows the usual valuation bookkeeping.
template <class R>
Series<R> operator*(const Series<R>& a, const Series<R>& b) {
    if (a.v0 < -1 || b.v0 < -1) throw std::domain_error("Series: v0 < -1 unsupported");
    int lead = a.v0 + b.v0;
    int T = std::min(a.order() + b.v0, b.order() + a.v0);
    Series<R> r(a.ring, lead, T);
    std::vector<typename R::Elem> out;
    detail::mul_coeffs(a.ring, a.c, b.c, out, std::size_t(std::max(T - lead, 0)));
    r.c = std::move(out);
    return r;
}

template <class R>
Series<R> series_one(R ring, int T) {
    Series<R> s(ring, T);
    if (T > 0) s.c[0] = ring.one();
    return s;
}

// q d/dq
template <class R>
Series<R> q_derivative(const Series<R>& f) {
    Series<R> r = f;
    for (int n = f.v0; n < f.order(); ++n)
        r.c[std::size_t(n - f.v0)] = f.ring.mul(f.c[std::size_t(n - f.v0)], f.ring.from_long(n));
    return r;
}

// f(q) -> f(q^k), to order T
template <class R>
Series<R> dilate(const Series<R>& f, int k, int T) {
    if (f.v0 != 0) throw std::domain_error("dilate: v0 must be 0");
    Series<R> r(f.ring, T);
    for (int n = 0; n < f.order() && n * k < T; ++n) r.c[std::size_t(n * k)] = f.c[std::size_t(n)];
    return r;
}

// D * sum_n a_{Dn} q^{An}  (order floor(order(f)/D)*A per the decimation rule)
template <class R>
Series<R> decimate(const Series<R>& f, int D, int A) {
    if (f.v0 != 0) throw std::domain_error("decimate: v0 must be 0");
    int terms = f.order() / D;  // coefficients a_0, a_D, ..., a_{D(terms-1)} available... see below
    // a_{Dn} exists for Dn < order(f), i.e. n <= (order-1)/D; order of result = A*floor(order/D)
    int T = (f.order() / D) * A;
    if (D == 1) T = f.order() * A;
    Series<R> r(f.ring, std::max(T, 1));
    auto Dk = f.ring.from_long(D);
    for (int n = 0; n * D < f.order() && n * A < r.order(); ++n)
        r.c[std::size_t(n * A)] = f.ring.mul(f.c[std::size_t(n * D)], Dk);
    (void)terms;
    return r;
}

// Inverse of a series with invertible constant term.
template <class R>
Series<R> inverse(const Series<R>& f, int T) {
    if (f.v0 != 0) throw std::domain_error("inverse: v0 must be 0");
    if (f.order() < 1 || f.ring.is_zero(f.c[0])) throw std::domain_error("inverse: zero constant term");
    Series<R> r(f.ring, T);
    auto u = f.ring.div(f.ring.one(), f.c[0]);
    r.c[0] = u;
    for (int n = 1; n < T; ++n) {
        auto s = f.ring.zero();
        for (int i = 1; i <= n && i < f.order(); ++i)
            s = f.ring.add(s, f.ring.mul(f.c[std::size_t(i)], r.c[std::size_t(n - i)]));
        r.c[std::size_t(n)] = f.ring.neg(f.ring.mul(u, s));
    }
    return r;
}

}  // namespace fricke
