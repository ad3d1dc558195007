#include "fricke/tripoly.hpp"

#include <cmath>
#include <stdexcept>

namespace fricke {

std::string family_tag(Family f) {
    switch (f) {
        case Family::U: return "U";
        case Family::V: return "V";
        case Family::W: return "W";
        case Family::NumA: return "A";
        case Family::NumB: return "B";
        case Family::Phi: return "Phi";
    }
    return "?";
}

std::optional<Family> family_from_tag(const std::string& s) {
    if (s == "U") return Family::U;
    if (s == "V") return Family::V;
    if (s == "W") return Family::W;
    if (s == "A") return Family::NumA;
    if (s == "B") return Family::NumB;
    if (s == "Phi" || s.rfind("Phi", 0) == 0) return Family::Phi;
    return std::nullopt;
}

int family_weight(Family f) {
    switch (f) {
        case Family::V: return 4;
        case Family::W: return 6;
        default: return 2;
    }
}

void TriPoly::add_term(const Mono4& m, const Rat& c) {
    if (c == 0) return;
    auto it = monomials.find(m);
    if (it == monomials.end()) {
        monomials.emplace(m, c);
    } else {
        it->second += c;
        it->second.canonicalize();
        if (it->second == 0) monomials.erase(it);
    }
}

void TriPoly::canonicalize() {
    bool again = true;
    while (again) {
        again = false;
        for (auto it = monomials.begin(); it != monomials.end(); ++it) {
            if (it->first.i6 < 2) continue;
            Mono4 m = it->first;
            Rat c = it->second;
            monomials.erase(it);
            add_term({m.r, m.i4 + 3, m.i6 - 2, m.i12}, c);
            add_term({m.r, m.i4, m.i6 - 2, m.i12 + 1}, Rat(-1728) * c);
            again = true;
            break;
        }
    }
}

int TriPoly::degree_x() const {
    int d = 0;
    for (const auto& [m, c] : monomials) d = std::max(d, m.r);
    return d;
}

bool TriPoly::is_integral() const {
    for (const auto& [m, c] : monomials)
        if (c.get_den() != 1) return false;
    return true;
}

bool TriPoly::is_weight_homogeneous(long total) const {
    for (const auto& [m, c] : monomials)
        if (mono_weight(m) != total) return false;
    return true;
}

void ABPoly::add_term(const Mono3& m, const Rat& c) {
    if (c == 0) return;
    auto it = monomials.find(m);
    if (it == monomials.end()) {
        monomials.emplace(m, c);
    } else {
        it->second += c;
        it->second.canonicalize();
        if (it->second == 0) monomials.erase(it);
    }
}

int ABPoly::degree_x() const {
    int d = 0;
    for (const auto& [m, c] : monomials) d = std::max(d, m.r);
    return d;
}

bool ABPoly::is_integral() const {
    for (const auto& [m, c] : monomials)
        if (c.get_den() != 1) return false;
    return true;
}

bool ABPoly::is_weight_homogeneous(long total) const {
    for (const auto& [m, c] : monomials)
        if (mono_weight(m) != total) return false;
    return true;
}

ABPoly to_ab_form(const TriPoly& p) {
    // E4 = -A/3, E6 = -B/2, Delta = -(4A^3 + 27B^2)/186624
    ABPoly out;
    out.ell = p.ell;
    out.weight_w = p.weight_w;
    out.family = p.family;
    for (const auto& [m, c] : p.monomials) {
        Rat base = c;
        base *= Rat(Int((m.i4 % 2) ? -1 : 1), int_pow(Int(3), unsigned(m.i4)));
        base *= Rat(Int((m.i6 % 2) ? -1 : 1), int_pow(Int(2), unsigned(m.i6)));
        base *= Rat(Int((m.i12 % 2) ? -1 : 1), int_pow(Int(186624), unsigned(m.i12)));
        base.canonicalize();
        // expand (4A^3 + 27B^2)^i12
        for (int j = 0; j <= m.i12; ++j) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), unsigned(m.i12), unsigned(j));
            Rat coef = base * Rat(binom * int_pow(Int(4), unsigned(j)) *
                                  int_pow(Int(27), unsigned(m.i12 - j)));
            coef.canonicalize();
            out.add_term({m.r, m.i4 + 3 * j, m.i6 + 2 * (m.i12 - j)}, coef);
        }
    }
    return out;
}

TriPoly from_ab_form(const ABPoly& p) {
    // A = -3 E4, B = -2 E6, then canonicalize powers of E6
    TriPoly out;
    out.ell = p.ell;
    out.weight_w = p.weight_w;
    out.family = p.family;
    for (const auto& [m, c] : p.monomials) {
        Rat coef = c;
        coef *= Rat(int_pow(Int(-3), unsigned(m.iA)));
        coef *= Rat(int_pow(Int(-2), unsigned(m.iB)));
        coef.canonicalize();
        out.add_term({m.r, m.iA, m.iB, 0}, coef);
    }
    out.canonicalize();
    return out;
}

void TriPolyMod::add_term(const Mono4& m, u64 c) {
    Fp F(p);
    c %= p;
    if (!c) return;
    auto it = monomials.find(m);
    if (it == monomials.end()) {
        monomials.emplace(m, c);
    } else {
        it->second = F.add(it->second, c);
        if (!it->second) monomials.erase(it);
    }
}

void ABPolyMod::add_term(const Mono3& m, u64 c) {
    Fp F(p);
    c %= p;
    if (!c) return;
    auto it = monomials.find(m);
    if (it == monomials.end()) {
        monomials.emplace(m, c);
    } else {
        it->second = F.add(it->second, c);
        if (!it->second) monomials.erase(it);
    }
}

TriPolyMod reduce_mod(const TriPoly& p, u64 prime) {
    TriPolyMod out;
    out.ell = p.ell;
    out.weight_w = p.weight_w;
    out.family = p.family;
    out.p = prime;
    for (const auto& [m, c] : p.monomials) out.add_term(m, mod_u64(c, prime));
    return out;
}

ABPolyMod reduce_mod(const ABPoly& p, u64 prime) {
    ABPolyMod out;
    out.ell = p.ell;
    out.weight_w = p.weight_w;
    out.family = p.family;
    out.p = prime;
    for (const auto& [m, c] : p.monomials) out.add_term(m, mod_u64(c, prime));
    return out;
}

ABPolyMod to_ab_form(const TriPolyMod& p) {
    Fp F(p.p);
    ABPolyMod out;
    out.ell = p.ell;
    out.weight_w = p.weight_w;
    out.family = p.family;
    out.p = p.p;
    const u64 i3 = F.inv(3 % F.p), i2 = F.inv(2), iD = F.inv(186624 % F.p);
    for (const auto& [m, c] : p.monomials) {
        u64 base = c;
        for (int k = 0; k < m.i4; ++k) base = F.mul(base, F.neg(i3));
        for (int k = 0; k < m.i6; ++k) base = F.mul(base, F.neg(i2));
        for (int k = 0; k < m.i12; ++k) base = F.mul(base, F.neg(iD));
        for (int j = 0; j <= m.i12; ++j) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), unsigned(m.i12), unsigned(j));
            u64 coef = F.mul(base, mod_u64(binom, F.p));
            coef = F.mul(coef, F.pow(4, u64(j)));
            coef = F.mul(coef, F.pow(27, u64(m.i12 - j)));
            out.add_term({m.r, m.i4 + 3 * j, m.i6 + 2 * (m.i12 - j)}, coef);
        }
    }
    return out;
}

}  // namespace fricke
