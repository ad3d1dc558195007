#pragma once

#include <stdexcept>
#include <string>

#include "fricke/ints.hpp"

namespace fricke {

// Coefficient ring adapters. The series/basis/Newton code is generic over
// these; a ring object is carried by value (GF holds its modulus).

struct ZZ {
    using Elem = Int;
    static constexpr bool exact = true;
    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    Elem from_long(long v) const { return Int(v); }
    Elem from_int(const Int& v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    // division restricted to exact quotients
    Elem div(const Elem& a, const Elem& b) const {
        if (b == 0) throw std::domain_error("ZZ::div by zero");
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (r != 0) throw std::domain_error("ZZ::div: not exact");
        return q;
    }
    bool invertible_long(long k) const { return k == 1 || k == -1; }
    std::string str(const Elem& a) const { return a.get_str(); }
};

struct QQ {
    using Elem = Rat;
    static constexpr bool exact = true;
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    Elem from_long(long v) const { return Rat(v); }
    Elem from_int(const Int& v) const { return Rat(v); }
    Elem add(const Elem& a, const Elem& b) const { Rat r = a + b; r.canonicalize(); return r; }
    Elem sub(const Elem& a, const Elem& b) const { Rat r = a - b; r.canonicalize(); return r; }
    Elem mul(const Elem& a, const Elem& b) const { Rat r = a * b; r.canonicalize(); return r; }
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem div(const Elem& a, const Elem& b) const {
        if (b == 0) throw std::domain_error("QQ::div by zero");
        Rat r = a / b;
        r.canonicalize();
        return r;
    }
    bool invertible_long(long k) const { return k != 0; }
    std::string str(const Elem& a) const { return a.get_str(); }
};

struct GF {
    using Elem = u64;
    static constexpr bool exact = false;
    Fp F;
    explicit GF(u64 p) : F(p) {}
    u64 p() const { return F.p; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_long(long v) const { return F.reduce_int(v); }
    Elem from_int(const Int& v) const { return mod_u64(v, F.p); }
    Elem add(Elem a, Elem b) const { return F.add(a, b); }
    Elem sub(Elem a, Elem b) const { return F.sub(a, b); }
    Elem mul(Elem a, Elem b) const { return F.mul(a, b); }
    Elem neg(Elem a) const { return F.neg(a); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    Elem div(Elem a, Elem b) const { return F.div(a, b); }
    bool invertible_long(long k) const { return F.reduce_int(k) != 0; }
    std::string str(Elem a) const { return std::to_string(a); }
};

}  // namespace fricke
