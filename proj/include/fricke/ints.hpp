#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fricke/fp.hpp"

namespace fricke {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& b, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline u64 mod_u64(const Int& a, u64 p) {
    Int r = a % Int(p);
    if (r < 0) r += Int(p);
    return r.get_ui();
}

inline u64 mod_u64(const Rat& a, u64 p) {
    Fp F(p);
    u64 num = mod_u64(Int(a.get_num()), p);
    u64 den = mod_u64(Int(a.get_den()), p);
    return F.div(num, den);
}

// Representative in the symmetric range (-M/2, M/2].
inline Int symmetric_lift(const Int& a, const Int& M) {
    Int r = a % M;
    if (r < 0) r += M;
    if (2 * r > M) r -= M;
    return r;
}

// Natural log of |a|, good to double precision (handles huge integers).
inline double ln_abs(const Int& a) {
    if (a == 0) throw std::domain_error("ln_abs(0)");
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, a.get_mpz_t());
    return std::log(std::fabs(d)) + double(exp2) * std::log(2.0);
}

inline double ln_abs(const Rat& a) { return ln_abs(Int(a.get_num())) - ln_abs(Int(a.get_den())); }

}  // namespace fricke
