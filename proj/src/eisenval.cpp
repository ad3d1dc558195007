#include "fricke/eisenval.hpp"

#include <cmath>
#include <stdexcept>

namespace fricke {

int truncation_terms_log2(double log2_absq, double log2_err, int kmax) {
    if (log2_absq >= 0) throw std::domain_error("truncation_terms: need |q| < 1");
    for (int N = 1;; ++N) {
        double t1 = 2.0 * kmax * std::log2(6.0 * N - 1.0);
        double t2 = 2.0 * kmax * std::log2(6.0 * N + 1.0);
        double head = std::max(t1, t2) + 1.0;  // log2((6N-1)^2k + (6N+1)^2k) <= max + 1
        double bound = head + (double(N) * (3.0 * N - 1.0) / 2.0) * log2_absq;
        if (bound < log2_err) return N;
        if (N > 1'000'000) throw std::runtime_error("truncation_terms: no convergence");
    }
}

int truncation_terms(double abs_q, double target_error, int kmax) {
    if (!(abs_q > 0) || abs_q >= 1) throw std::domain_error("truncation_terms: need 0 < |q| < 1");
    if (target_error >= 2) return 1;
    return truncation_terms_log2(std::log2(abs_q), std::log2(target_error), kmax);
}

Real find_power_in_table(std::set<long>& A, std::map<long, Real>& Q, long c, long* fallbacks) {
    auto have = [&](long e) { return A.count(e) != 0; };
    Real out(Q.at(1).prec());
    bool found = false;
    if (c == 1) {
        out = Q.at(1);
        found = true;
    }
    if (!found && c % 2 == 0 && have(c / 2)) {  // c = 2a
        out = Q.at(c / 2) * Q.at(c / 2);
        found = true;
    }
    if (!found) {  // c = a + b
        for (long a : A) {
            if (a >= c) break;
            if (have(c - a)) {
                out = Q.at(a) * Q.at(c - a);
                found = true;
                break;
            }
        }
    }
    if (!found) {  // c = 2a + b
        for (long a : A) {
            if (2 * a >= c) break;
            if (have(c - 2 * a)) {
                out = Q.at(a) * Q.at(a) * Q.at(c - 2 * a);
                found = true;
                break;
            }
        }
    }
    if (!found) {  // binary exponentiation from Q[1]
        if (fallbacks) ++*fallbacks;
        Real base = Q.at(1);
        Real acc = Real::of_long(1, base.prec());
        long e = c;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        out = acc;
    }
    A.insert(c);
    Q.emplace(c, out);
    return out;
}

std::vector<Real> evaluate_many_T(const Real& q, int N, int kmax) {
    mpfr_prec_t prec = q.prec();
    std::vector<Real> T(std::size_t(kmax + 1), Real(prec));
    std::set<long> A{1};
    std::map<long, Real> Q;
    Q.emplace(1, q);
    long c = 0;
    int s = 1;
    for (int n = 1; n <= N; ++n) {
        s = -s;
        c += 2 * n - 1;
        for (int r = 1; r <= 2; ++r) {
            if (r == 2) c += n;
            Real qp = find_power_in_table(A, Q, c);
            if (s < 0) qp = -qp;
            long C = (6L * n + (r == 1 ? -1 : 1));
            C = C * C;
            for (int k = 0; k <= kmax; ++k) {
                T[std::size_t(k)] += qp;
                if (k < kmax) qp = qp.mul_long(C);
            }
        }
    }
    Real one = Real::of_long(1, prec);
    for (auto& t : T) t += one;
    return T;
}

std::vector<std::vector<Cplx>> evaluate_conjugate_values(long ell, const Real& z, int N,
                                                         const std::vector<Cplx>& xi, int kmax) {
    mpfr_prec_t prec = z.prec();
    std::vector<std::vector<Cplx>> T(std::size_t(kmax + 1),
                                     std::vector<Cplx>(std::size_t(ell), Cplx(prec)));
    std::set<long> A{1};
    std::map<long, Real> Q;
    Q.emplace(1, z);
    long c = 0;
    int s = 1;
    for (int n = 1; n <= N; ++n) {
        s = -s;
        c += 2 * n - 1;
        for (int r = 1; r <= 2; ++r) {
            if (r == 2) c += n;
            Real zp = find_power_in_table(A, Q, c);
            if (s < 0) zp = -zp;
            long C = (6L * n + (r == 1 ? -1 : 1));
            C = C * C;
            for (int k = 0; k <= kmax; ++k) {
                T[std::size_t(k)][0].re += zp;
                for (long h = 1; h < ell; ++h)
                    T[std::size_t(k)][std::size_t(h)] += xi[std::size_t((h * c) % ell)] * zp;
                if (k < kmax) zp = zp.mul_long(C);
            }
        }
    }
    Real one = Real::of_long(1, prec);
    for (int k = 0; k <= kmax; ++k)
        for (long h = 0; h < ell; ++h) T[std::size_t(k)][std::size_t(h)].re += one;
    return T;
}

template <class V>
Eisen<V> eisenstein_from_T(const V& t0, const V& t2, const V& t4, const V& t6) {
    V e2 = t2 / t0;
    V e2sq = e2 * e2;
    V e4 = (e2sq.mul_long(3) - t4 / t0).div_long(2);
    V e6 = (t6 / t0 - (e2sq * e2).mul_long(15) + (e2 * e4).mul_long(30)).div_long(16);
    return {e2, e4, e6};
}

template Eisen<Real> eisenstein_from_T<Real>(const Real&, const Real&, const Real&, const Real&);
template Eisen<Cplx> eisenstein_from_T<Cplx>(const Cplx&, const Cplx&, const Cplx&, const Cplx&);

EvalContext::EvalContext(mpfr_prec_t precision, long ell_) : prec(precision), ell(ell_) {
    Real two_pi = Real::pi(prec).mul_long(2);
    for (long h = 0; h < ell; ++h) {
        Real ang = two_pi.mul_long(h).div_long(ell);
        Real c(prec), s(prec);
        mpfr_sin_cos(s.raw(), c.raw(), ang.raw(), MPFR_RNDN);
        xi.emplace_back(c, s);
    }
}

ThetaValues theta_values(const Real& q1, mpfr_prec_t prec) {
    if (!(q1.log2_abs() < 0)) throw std::domain_error("theta_values: need |q1| < 1");
    double lq = q1.log2_abs();
    double target = -double(prec) - 16;
    Real a(prec), b(prec), c(prec);
    // theta2 = 2 q1^{1/4} sum_{n>=0} q1^{n(n+1)}
    for (long n = 0;; ++n) {
        long e = n * (n + 1);
        if (double(e) * lq < target) break;
        a += (n == 0) ? Real::of_long(1, prec) : q1.pow_ui(static_cast<unsigned long>(e));
    }
    a = a.mul_long(2) * q1.rootn(4);
    // theta3 = 1 + 2 sum q1^{n^2};  theta4 = 1 + 2 sum (-1)^n q1^{n^2}
    b = Real::of_long(1, prec);
    c = Real::of_long(1, prec);
    for (long n = 1;; ++n) {
        long e = n * n;
        if (double(e) * lq < target) break;
        Real t = q1.pow_ui(static_cast<unsigned long>(e)).mul_long(2);
        b += t;
        if (n % 2) c -= t;
        else c += t;
    }
    return {a, b, c};
}

E46D e46_from_theta(const ThetaValues& t) {
    Real a4 = t.a.pow_ui(4), b4 = t.b.pow_ui(4), c4 = t.c.pow_ui(4);
    Real e4 = (a4 * a4 + b4 * b4 + c4 * c4).div_long(2);
    Real e6 = ((a4 + b4) * (b4 + c4) * (c4 - a4)).div_long(2);
    Real delta = ((t.a * t.b * t.c).div_long(2)).pow_ui(8);
    return {e4, e6, delta};
}

EisenReal eval_at_rho(const Real& rho, mpfr_prec_t prec) {
    Real q = (-Real::pi(prec).mul_long(2) * rho).exp();
    int N = truncation_terms_log2(q.log2_abs(), -double(prec) - 8, 3);
    auto T = evaluate_many_T(q, N, 3);
    auto [e2, e4, e6] = eisenstein_from_T(T[0], T[1], T[2], T[3]);
    Real delta = (e4.pow_ui(3) - e6.pow_ui(2)).div_long(1728);
    Real j = e4.pow_ui(3).mul_long(1728) / (e4.pow_ui(3) - e6.pow_ui(2));
    return {e2, e4, e6, delta, j};
}

}  // namespace fricke
