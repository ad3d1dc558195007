#include "fricke/fpx.hpp"

#include <algorithm>
#include <stdexcept>

namespace fricke {
namespace fpx {

Poly normalize(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int degree(const Poly& f) { return int(f.size()) - 1; }

Poly add(const Fp& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    return normalize(std::move(r));
}

Poly sub(const Fp& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    return normalize(std::move(r));
}

Poly mul(const Fp& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return normalize(std::move(r));
}

Poly rem(const Fp& F, Poly a, const Poly& b) {
    if (b.empty()) throw std::domain_error("fpx::rem: division by zero polynomial");
    u64 inv_lead = F.inv(b.back());
    while (a.size() >= b.size()) {
        u64 c = F.mul(a.back(), inv_lead);
        std::size_t off = a.size() - b.size();
        if (c)
            for (std::size_t i = 0; i < b.size(); ++i)
                a[off + i] = F.sub(a[off + i], F.mul(c, b[i]));
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
    }
    return a;
}

Poly monic(const Fp& F, Poly f) {
    f = normalize(std::move(f));
    if (f.empty()) return f;
    u64 inv = F.inv(f.back());
    for (auto& c : f) c = F.mul(c, inv);
    return f;
}

Poly gcd(const Fp& F, Poly a, Poly b) {
    a = normalize(std::move(a));
    b = normalize(std::move(b));
    while (!b.empty()) {
        Poly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, std::move(a));
}

Poly powmod(const Fp& F, Poly base, Int e, const Poly& mod) {
    Poly r{1};
    base = rem(F, std::move(base), mod);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem(F, mul(F, r, base), mod);
        base = rem(F, mul(F, base, base), mod);
        e >>= 1;
    }
    return r;
}

u64 eval(const Fp& F, const Poly& f, u64 x) {
    u64 acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

Poly derivative(const Fp& F, const Poly& f) {
    if (f.size() <= 1) return {};
    Poly r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = F.mul(f[i], F.reduce_int(long(i)));
    return normalize(std::move(r));
}

namespace {

void split_roots(const Fp& F, const Poly& f, Rng& rng, std::vector<u64>& out) {
    int d = degree(f);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(F.div(F.neg(f[0]), f[1]));
        return;
    }
    if (d == 2) {
        // quadratic formula
        u64 a = f[2], b = f[1], c = f[0];
        u64 disc = F.sub(F.mul(b, b), F.mul(4, F.mul(a, c)));
        u64 s = F.sqrt(disc);
        u64 inv2a = F.inv(F.mul(2, a));
        out.push_back(F.mul(F.add(F.neg(b), s), inv2a));
        out.push_back(F.mul(F.sub(F.neg(b), s), inv2a));
        return;
    }
    for (;;) {
        u64 delta = rng.below(F.p);
        // (x + delta)^{(p-1)/2} - 1 splits the roots into halves
        Poly xd{delta, 1};
        Poly h = powmod(F, xd, Int(static_cast<unsigned long>((F.p - 1) / 2)), f);
        if (!h.empty()) h[0] = F.sub(h[0], 1);
        Poly g = gcd(F, h, f);
        int dg = degree(g);
        if (dg <= 0 || dg >= d) continue;
        Poly co{1};
        // f / g by repeated division
        Poly q;
        {
            Poly aa = f;
            const Poly& bb = g;
            Poly quotient(aa.size() - bb.size() + 1, 0);
            u64 inv_lead = F.inv(bb.back());
            while (aa.size() >= bb.size() && !aa.empty()) {
                u64 cq = F.mul(aa.back(), inv_lead);
                std::size_t off = aa.size() - bb.size();
                quotient[off] = cq;
                for (std::size_t i = 0; i < bb.size(); ++i)
                    aa[off + i] = F.sub(aa[off + i], F.mul(cq, bb[i]));
                while (!aa.empty() && aa.back() == 0) aa.pop_back();
            }
            q = normalize(std::move(quotient));
        }
        split_roots(F, g, rng, out);
        split_roots(F, q, rng, out);
        return;
    }
}

}  // namespace

std::vector<u64> roots(const Fp& F, const Poly& f_in, Rng& rng) {
    Poly f = monic(F, f_in);
    if (degree(f) < 1) return {};
    // keep only the F_p-rational part: gcd(f, x^p - x)
    Poly xp = powmod(F, Poly{0, 1}, Int(static_cast<unsigned long>(F.p)), f);
    Poly xpminusx = sub(F, xp, Poly{0, 1});
    Poly g = gcd(F, xpminusx, f);
    // strip repeated roots: g is squarefree since x^p - x is
    std::vector<u64> out;
    split_roots(F, g, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

Poly from_int_coeffs(const Fp& F, const std::vector<Int>& coeffs) {
    Poly r;
    for (const auto& c : coeffs) r.push_back(mod_u64(c, F.p));
    return normalize(std::move(r));
}

}  // namespace fpx
}  // namespace fricke
