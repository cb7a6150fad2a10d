#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include <mpfr.h>

#include "msk/rational.hpp"

namespace msk {

// Arbitrary-precision binary float. Thin RAII wrapper around mpfr_t; every
// value carries its own precision and binary operations work at the larger
// of the two operand precisions.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec < 2 ? 2 : prec); mpfr_set_zero(v_, 1); }

    BigFloat(const BigFloat& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, o.prec()); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat from_rat(const Rat& x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    // 2^e, handy for tolerances.
    static BigFloat pow2(long e, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }

    BigFloat abs() const {
        BigFloat r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        BigFloat r(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    static BigFloat hypot(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat atan2(const BigFloat& y, const BigFloat& x) {
        BigFloat r(std::max(y.prec(), x.prec()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    BigFloat sin() const { BigFloat r(prec()); mpfr_sin(r.v_, v_, MPFR_RNDN); return r; }
    BigFloat cos() const { BigFloat r(prec()); mpfr_cos(r.v_, v_, MPFR_RNDN); return r; }
    // |this|^e for this >= 0
    BigFloat pow(const BigFloat& e) const {
        BigFloat r(std::max(prec(), e.prec()));
        mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string str(int digits = 0) const {
        if (digits <= 0) digits = static_cast<int>(prec() / 3.32) + 2;
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

  private:
    mpfr_t v_;
};

// Complex number over BigFloat. Enough surface for truncated series
// arithmetic: field operations, principal roots, rational powers.
class BigComplex {
  public:
    explicit BigComplex(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

    static BigComplex from_long(long x, mpfr_prec_t prec) {
        return {BigFloat::from_long(x, prec), BigFloat(prec)};
    }
    static BigComplex from_rat(const Rat& x, mpfr_prec_t prec) {
        return {BigFloat::from_rat(x, prec), BigFloat(prec)};
    }
    static BigComplex from_rat_pair(const Rat& re, const Rat& im, mpfr_prec_t prec) {
        return {BigFloat::from_rat(re, prec), BigFloat::from_rat(im, prec)};
    }

    const BigFloat& real() const { return re_; }
    const BigFloat& imag() const { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n.is_zero()) throw series_error("complex division by zero");
        return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
    }
    BigComplex operator-() const { return {-re_, -im_}; }

    BigFloat abs() const { return BigFloat::hypot(re_, im_); }
    BigFloat arg() const { return BigFloat::atan2(im_, re_); }

    // Principal square root (argument in (-pi/2, pi/2]).
    BigComplex sqrt() const {
        if (is_zero()) return BigComplex(prec());
        BigFloat m = abs();
        BigFloat two = BigFloat::from_long(2, prec());
        BigFloat w = ((m + re_.abs()) / two).sqrt();
        if (re_.sign() >= 0) {
            return {w, im_ / (two * w)};
        }
        BigFloat u = im_.abs() / (two * w);
        BigFloat v = im_.sign() < 0 ? -w : w;
        return {u, v};
    }

    // Principal n-th root via polar form.
    BigComplex nth_root(unsigned long n) const {
        if (n == 1) return *this;
        if (is_zero()) return BigComplex(prec());
        if (n == 2) return sqrt();
        return pow_rat(Rat(1, static_cast<long>(n)));
    }

    // Principal value of z^(p/q).
    BigComplex pow_rat(const Rat& e) const {
        if (is_zero()) {
            if (sgn(e) <= 0) throw series_error("zero raised to a non-positive power");
            return BigComplex(prec());
        }
        BigFloat m = abs();
        BigFloat ef = BigFloat::from_rat(e, prec());
        BigFloat r = m.pow(ef);
        BigFloat t = arg() * ef;
        return {r * t.cos(), r * t.sin()};
    }

    std::string str(int digits = 0) const {
        return "(" + re_.str(digits) + (im_.sign() < 0 ? "" : "+") + im_.str(digits) + "i)";
    }

  private:
    BigFloat re_, im_;
};

}  // namespace msk
