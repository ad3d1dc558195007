#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fricke {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

// Prime field F_p for word-size p (p < 2^59 so that blocks of products can be
// accumulated in 128 bits before reduction).
struct Fp {
    u64 p;

    explicit Fp(u64 prime) : p(prime) { assert(p >= 3 && p < (u64(1) << 62)); }

    u64 reduce_int(i64 a) const {
        i64 r = a % i64(p);
        return r < 0 ? u64(r + i64(p)) : u64(r);
    }
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 neg(u64 a) const { return a ? p - a : 0; }
    u64 mul(u64 a, u64 b) const { return u64((u128)a * b % p); }

    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    u64 inv(u64 a) const {
        i64 t = 0, nt = 1;
        i64 r = i64(p), nr = i64(a % p);
        while (nr) {
            i64 q = r / nr;
            t -= q * nt; std::swap(t, nt);
            r -= q * nr; std::swap(r, nr);
        }
        if (r != 1) throw std::domain_error("Fp::inv: not invertible");
        return t < 0 ? u64(t + i64(p)) : u64(t);
    }

    u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

    // Legendre symbol: 1, p-1 (for -1), or 0.
    u64 legendre(u64 a) const { return pow(a, (p - 1) / 2); }

    bool is_square(u64 a) const { return a % p == 0 || legendre(a) == 1; }

    // Tonelli-Shanks; requires a to be a QR.
    u64 sqrt(u64 a) const {
        a %= p;
        if (a == 0) return 0;
        if (p % 4 == 3) return pow(a, (p + 1) / 4);
        u64 q = p - 1, s = 0;
        while (q % 2 == 0) { q >>= 1; ++s; }
        u64 z = 2;
        while (legendre(z) != p - 1) ++z;
        u64 m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
        while (t != 1) {
            u64 i = 0, tt = t;
            while (tt != 1) { tt = mul(tt, tt); ++i; }
            u64 b = c;
            for (u64 k = 0; k + i + 1 < m; ++k) b = mul(b, b);
            m = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
        return r;
    }
};

// Small deterministic PRNG (splitmix64 / xoshiro-ish); reproducible across
// platforms, which std::mt19937 seeding via distributions is not.
struct Rng {
    u64 s;
    explicit Rng(u64 seed) : s(seed) {}
    u64 next() {
        u64 z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    u64 below(u64 n) { return next() % n; }  // n << 2^64, bias negligible
    Rng fork(u64 tag) const { return Rng(s ^ (tag * 0x9e3779b97f4a7c15ULL + 0x1234567)); }
};

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1, s = 0;
    while (d % 2 == 0) { d >>= 1; ++s; }
    auto mulm = [&](u64 a, u64 b) { return u64((u128)a * b % n); };
    auto powm = [&](u64 a, u64 e) {
        u64 r = 1;
        while (e) { if (e & 1) r = mulm(r, a); a = mulm(a, a); e >>= 1; }
        return r;
    };
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powm(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (u64 r = 1; r < s; ++r) {
            x = mulm(x, x);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace fricke
