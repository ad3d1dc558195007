#pragma once

#include <map>
#include <set>
#include <vector>

#include "fricke/real.hpp"

namespace fricke {

// Smallest N with ((6N-1)^{2k} + (6N+1)^{2k}) |q|^{N(3N-1)/2} < err, computed in
// the log2 domain so huge precisions do not underflow. The series alternates,
// so the first dropped term bounds the truncation error.
int truncation_terms_log2(double log2_absq, double log2_err, int kmax);
// Literal-signature convenience for |q| and err representable as doubles.
int truncation_terms(double abs_q, double target_error, int kmax);

// q^c from the shared power table via the patterns c = 2a, c = a+b, c = 2a+b;
// falls back to binary exponentiation from Q[1] when no pattern applies (the
// pentagonal exponent stream never needs it, but totality is guaranteed).
// Updates the table; bumps *fallbacks when the fallback fires.
Real find_power_in_table(std::set<long>& A, std::map<long, Real>& Q, long c,
                         long* fallbacks = nullptr);

// Combined evaluation of T_{2k}(q) for 0 <= k <= kmax at real q in (0,1).
std::vector<Real> evaluate_many_T(const Real& q, int N, int kmax);

// T_{2k}(z zeta_ell^h) for 0 <= k <= kmax, 0 <= h < ell, sharing the real
// powers z^c and twisting by xi[(h c) mod ell]. Column h=0 is real.
std::vector<std::vector<Cplx>> evaluate_conjugate_values(long ell, const Real& z, int N,
                                                         const std::vector<Cplx>& xi, int kmax);

// E2 = T2/T0, E4 = (3 E2^2 - T4/T0)/2, E6 = (T6/T0 - 15 E2^3 + 30 E2 E4)/16.
template <class V>
struct Eisen {
    V e2, e4, e6;
};

template <class V>
Eisen<V> eisenstein_from_T(const V& t0, const V& t2, const V& t4, const V& t6);

// Arbitrary-precision evaluation state for one conjugate-orbit computation.
struct EvalContext {
    mpfr_prec_t prec;
    long ell;
    std::vector<Cplx> xi;  // zeta_ell^h for 0 <= h < ell
    long pattern_fallbacks = 0;

    EvalContext(mpfr_prec_t precision, long ell_);
};

// theta_2, theta_3, theta_4 at real q1 in (0,1) by direct summation.
struct ThetaValues {
    Real a, b, c;  // theta2, theta3, theta4
};
ThetaValues theta_values(const Real& q1, mpfr_prec_t prec);

// E4 = (a^8+b^8+c^8)/2, E6 = (a^4+b^4)(b^4+c^4)(c^4-a^4)/2, Delta = (abc/2)^8.
struct E46D {
    Real e4, e6, delta;
};
E46D e46_from_theta(const ThetaValues& t);

// Everything at tau = rho*i: E2/E4/E6/Delta/j via the T-series route.
struct EisenReal {
    Real e2, e4, e6, delta, j;
};
EisenReal eval_at_rho(const Real& rho, mpfr_prec_t prec);

}  // namespace fricke
