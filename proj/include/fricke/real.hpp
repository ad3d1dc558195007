#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "fricke/ints.hpp"

namespace fricke {

// Thin RAII wrapper over mpfr_t. Every value carries its precision; binary
// operations compute at the max of the operand precisions, rounding to nearest.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, 2); mpfr_swap(x_, o.x_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    static Real of_long(long v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.x_, v, MPFR_RNDN);
        return r;
    }
    static Real of_double(double v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.x_, v, MPFR_RNDN);
        return r;
    }
    static Real of_int(const Int& v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real of_string(const std::string& s, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_str(r.x_, s.c_str(), 10, MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.x_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    // log2 of |x| (very negative for 0)
    double log2_abs() const {
        if (mpfr_zero_p(x_)) return -1e300;
        Real t(64);
        mpfr_abs(t.x_, x_, MPFR_RNDN);
        mpfr_log2(t.x_, t.x_, MPFR_RNDN);
        return mpfr_get_d(t.x_, MPFR_RNDN);
    }
    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, x_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { mpfr_add(x_, x_, o.x_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(x_, x_, o.x_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(x_, x_, o.x_, MPFR_RNDN); return *this; }

    Real mul_long(long k) const {
        Real r(prec());
        mpfr_mul_si(r.x_, x_, k, MPFR_RNDN);
        return r;
    }
    Real div_long(long k) const {
        Real r(prec());
        mpfr_div_si(r.x_, x_, k, MPFR_RNDN);
        return r;
    }
    Real pow_ui(unsigned long e) const {
        Real r(prec());
        mpfr_pow_ui(r.x_, x_, e, MPFR_RNDN);
        return r;
    }
    Real sqrt() const {
        Real r(prec());
        mpfr_sqrt(r.x_, x_, MPFR_RNDN);
        return r;
    }
    Real rootn(unsigned long n) const {
        Real r(prec());
        mpfr_rootn_ui(r.x_, x_, n, MPFR_RNDN);
        return r;
    }
    Real exp() const {
        Real r(prec());
        mpfr_exp(r.x_, x_, MPFR_RNDN);
        return r;
    }
    Real abs() const {
        Real r(prec());
        mpfr_abs(r.x_, x_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.x_, b.x_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.x_, b.x_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.x_, b.x_); }

    // nearest integer and the rounding gap |x - round(x)|
    std::pair<Int, double> round_to_int() const {
        Real r(prec());
        mpfr_round(r.x_, x_);
        Int z;
        mpfr_get_z(z.get_mpz_t(), r.x_, MPFR_RNDN);
        Real gap = *this - r;
        return {z, std::abs(gap.to_double())};
    }

  private:
    mpfr_t x_;
};

// Complex value on top of Real (only the handful of operations the conjugate
// orbit needs).
struct Cplx {
    Real re, im;

    explicit Cplx(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static Cplx of_real(const Real& r) { return Cplx(r, Real(r.prec())); }

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cplx& operator+=(const Cplx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Real abs2() const { return re * re + im * im; }
    double log2_abs() const { return abs2().log2_abs() / 2.0; }
    Cplx mul_long(long k) const { return {re.mul_long(k), im.mul_long(k)}; }
    Cplx div_long(long k) const { return {re.div_long(k), im.div_long(k)}; }
};

}  // namespace fricke
