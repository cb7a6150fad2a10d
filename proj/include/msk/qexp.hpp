#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msk/coeff.hpp"

namespace msk {

// Truncated Puiseux series in q: finitely many coefficients on the lattice
// (1/branch_den)Z together with a knowledge bound. A value represents
//
//     sum_i  c_i q^((lead+i)/den)   +   O(q^(bound/den)),
//
// with every lattice coefficient below bound/den known exactly (slots not
// stored are known to be zero). The zero series stores no coefficients and
// keeps lead == bound. Values are immutable after construction; all
// operations are pure and safe to share across threads.
//
// Order bookkeeping is pessimistic: binary operations align lattices by lcm
// and truncate to the smallest common window, never inflating what is known.
template <class C>
class QExp {
  public:
    using traits = coeff_traits<C>;
    using context_type = typename traits::context;

    QExp() = default;

    static QExp zero(long order_q, context_type ctx = {}) {
        QExp r;
        r.den_ = 1;
        r.lead_ = r.bound_ = order_q;
        r.ctx_ = ctx;
        return r;
    }

    static QExp constant(C value, long order_q, context_type ctx = {}) {
        if (order_q < 1) throw series_error("empty truncation window for constant");
        QExp r;
        r.den_ = 1;
        r.lead_ = 0;
        r.bound_ = order_q;
        r.ctx_ = ctx;
        if (!traits::is_zero(value)) r.c_.push_back(std::move(value));
        r.normalize();
        return r;
    }

    static QExp constant_rat(const Rat& value, long order_q, context_type ctx = {}) {
        return constant(traits::from_rat(value, ctx), order_q, ctx);
    }

    // The monomial q^r, known modulo O(q^order_q).
    static QExp q_power(const Rat& r, long order_q, context_type ctx = {}) {
        const int den = static_cast<int>(rat_den_long(r));
        const long lead = rat_num_long(r);
        const long bound = order_q * den;
        if (bound <= lead) throw series_error("empty truncation window for q^" + rat_str(r));
        QExp out;
        out.den_ = den;
        out.lead_ = lead;
        out.bound_ = bound;
        out.ctx_ = ctx;
        out.c_.push_back(traits::one(ctx));
        out.normalize();
        return out;
    }

    // Raw assembly on an explicit lattice; exponents are (lead+i)/den.
    static QExp from_coeffs(int den, long lead, std::vector<C> coeffs, long bound,
                            context_type ctx = {}) {
        if (den < 1) throw series_error("branch denominator must be positive");
        QExp r;
        r.den_ = den;
        r.lead_ = lead;
        r.bound_ = bound;
        r.c_ = std::move(coeffs);
        r.ctx_ = ctx;
        r.normalize();
        return r;
    }

    bool is_zero() const { return c_.empty(); }
    int branch_den() const { return den_; }
    const context_type& context() const { return ctx_; }

    Rat lead_exp() const {
        if (is_zero()) throw series_error("zero series has no leading exponent");
        return rat_of(lead_, den_);
    }

    // Knowledge threshold: the series is known modulo O(q^order_q()).
    Rat order_q() const { return rat_of(bound_, den_); }

    // Stored window, in lattice units.
    std::size_t size() const { return c_.size(); }
    Rat exp_at(std::size_t i) const { return rat_of(lead_ + static_cast<long>(i), den_); }
    const C& coeff_at(std::size_t i) const { return c_[i]; }

    // Coefficient of q^e. Throws if e lies at or beyond the knowledge bound.
    C coeff(const Rat& e) const {
        if (e >= order_q())
            throw precision_error("coefficient of q^" + rat_str(e) + " beyond known order q^" +
                                  rat_str(order_q()));
        Rat idx = e * den_;
        if (!rat_is_integer(idx)) return traits::zero(ctx_);
        const long k = rat_to_long(idx) - lead_;
        if (k < 0 || k >= static_cast<long>(c_.size())) return traits::zero(ctx_);
        return c_[static_cast<std::size_t>(k)];
    }

    friend QExp operator+(const QExp& a, const QExp& b) { return add_sub(a, b, false); }
    friend QExp operator-(const QExp& a, const QExp& b) { return add_sub(a, b, true); }

    QExp operator-() const {
        QExp r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend QExp operator*(const QExp& a, const QExp& b) {
        auto [x, y] = aligned(a, b);
        auto ctx = merge(a.ctx_, b.ctx_);
        if (x.is_zero() || y.is_zero()) {
            // O(t^Bx) * (c t^ly + ...) = O(t^(Bx+ly)); both zero: O(t^(Bx+By)).
            long bound = x.is_zero() ? (y.is_zero() ? x.bound_ + y.bound_ : x.bound_ + y.lead_)
                                     : x.lead_ + y.bound_;
            QExp r;
            r.den_ = x.den_;
            r.lead_ = r.bound_ = bound;
            r.ctx_ = ctx;
            r.normalize();
            return r;
        }
        const long w = std::min(x.bound_ - x.lead_, y.bound_ - y.lead_);
        std::vector<C> out(static_cast<std::size_t>(w), traits::zero(ctx));
        for (std::size_t i = 0; i < x.c_.size() && static_cast<long>(i) < w; ++i) {
            if (traits::is_zero(x.c_[i])) continue;
            const long jlim = std::min<long>(static_cast<long>(y.c_.size()), w - static_cast<long>(i));
            for (long j = 0; j < jlim; ++j)
                out[i + static_cast<std::size_t>(j)] =
                    out[i + static_cast<std::size_t>(j)] + x.c_[i] * y.c_[static_cast<std::size_t>(j)];
        }
        return from_coeffs(x.den_, x.lead_ + y.lead_, std::move(out), x.lead_ + y.lead_ + w, ctx);
    }

    friend QExp operator/(const QExp& a, const QExp& b) { return a * inverse(b); }

    // Multiplicative inverse by leading-term normalization and the
    // geometric-series recurrence; lead_exp flips sign.
    friend QExp inverse(const QExp& b) {
        if (b.is_zero()) throw series_error("division by zero series");
        const long w = b.bound_ - b.lead_;
        if (w <= 0) throw series_error("empty truncation window in division");
        const C& c0 = b.c_.front();
        std::vector<C> inv(static_cast<std::size_t>(w), traits::zero(b.ctx_));
        inv[0] = traits::one(b.ctx_) / c0;
        for (long k = 1; k < w; ++k) {
            C acc = traits::zero(b.ctx_);
            const long jmax = std::min<long>(k, static_cast<long>(b.c_.size()) - 1);
            for (long j = 1; j <= jmax; ++j)
                acc = acc + b.c_[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
            inv[static_cast<std::size_t>(k)] = -(acc / c0);
        }
        return from_coeffs(b.den_, -b.lead_, std::move(inv), -b.lead_ + w, b.ctx_);
    }

    friend QExp operator*(const C& s, const QExp& a) {
        QExp r = a;
        for (auto& c : r.c_) c = s * c;
        r.normalize();
        return r;
    }
    friend QExp operator*(const QExp& a, const C& s) { return s * a; }

    friend QExp mul_rat(const QExp& a, const Rat& s) {
        QExp r = a;
        for (auto& c : r.c_) c = traits::mul_rat(c, s);
        r.normalize();
        return r;
    }

    // D = q d/dq: multiplies the coefficient of q^(k/N) by k/N.
    friend QExp theta_derivative(const QExp& a) {
        QExp r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = traits::mul_rat(r.c_[i], rat_of(r.lead_ + static_cast<long>(i), r.den_));
        r.normalize();
        return r;
    }

    friend QExp pow_int(const QExp& a, long n) {
        if (n == 0) {
            long w = a.is_zero() ? std::max(1L, a.bound_) : a.bound_ - a.lead_;
            return constant(traits::one(a.ctx_), std::max(1L, ceil_div(w, a.den_)), a.ctx_);
        }
        QExp base = n < 0 ? inverse(a) : a;
        unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
        QExp acc = base;
        --k;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = base * base;  // last squaring is wasted when k becomes 0; harmless at this scale
            k >>= 1;
        }
        return acc;
    }

    friend QExp nth_root(const QExp& a, long n) {
        if (n < 1) throw series_error("n-th root needs n >= 1");
        if (a.is_zero()) throw series_error("n-th root of zero series");
        auto root = traits::pow_rat(a.c_.front(), rat_of(1, n), a.ctx_);
        if (!root)
            throw series_error("leading coefficient " + traits::str(a.c_.front()) +
                               " is not an exact " + std::to_string(n) +
                               "-th power; renormalize the leading coefficient to 1 first");
        return a.binomial_power(rat_of(1, n), *root);
    }

    struct FracPower {
        QExp series;
        std::optional<C> dropped;  // set when the leading constant was normalized away
    };

    // a^(p/q). With normalize_leading the leading coefficient is rescaled to 1
    // before taking the power and the removed constant (when it is exactly
    // representable) is reported alongside.
    friend FracPower frac_power(const QExp& a, const Rat& e, bool normalize_leading) {
        if (a.is_zero()) throw series_error("fractional power of zero series");
        const C c0 = a.c_.front();
        auto factor = traits::pow_rat(c0, e, a.ctx_);
        if (!normalize_leading) {
            if (!factor)
                throw series_error("leading coefficient " + traits::str(c0) +
                                   " has no exact rational power " + rat_str(e) +
                                   "; use normalize_leading");
            return {a.binomial_power(e, *factor), std::nullopt};
        }
        QExp unit = a * (traits::one(a.ctx_) / c0);
        return {unit.binomial_power(e, traits::one(a.ctx_)), factor};
    }

    // log of 1 + O(t); inverse of exp0 to truncation order.
    friend QExp log1(const QExp& a) {
        if (a.is_zero() || a.lead_ != 0 || !traits::is_zero(a.c_.front() - traits::one(a.ctx_)))
            throw series_error("log1 requires a series of the form 1 + O(t)");
        const long w = a.bound_;
        std::vector<C> out(static_cast<std::size_t>(w), traits::zero(a.ctx_));
        for (long k = 1; k < w; ++k) {
            C acc = a.stored(k);
            for (long j = 1; j < k; ++j) {
                C term = a.stored(j) * out[static_cast<std::size_t>(k - j)];
                acc = acc - traits::mul_rat(term, rat_of(k - j, k));
            }
            out[static_cast<std::size_t>(k)] = acc;
        }
        return from_coeffs(a.den_, 0, std::move(out), w, a.ctx_);
    }

    friend QExp exp0(const QExp& a) {
        if (!a.is_zero() && a.lead_ <= 0)
            throw series_error("exp0 requires a series of the form O(t)");
        const long w = a.bound_;
        if (w <= 0) throw series_error("empty truncation window in exp0");
        std::vector<C> out(static_cast<std::size_t>(w), traits::zero(a.ctx_));
        out[0] = traits::one(a.ctx_);
        for (long k = 1; k < w; ++k) {
            C acc = traits::zero(a.ctx_);
            for (long j = 1; j <= k; ++j) {
                C term = a.stored(j - a.lead_) * out[static_cast<std::size_t>(k - j)];
                acc = acc + traits::mul_rat(term, rat_of(j, k));
            }
            out[static_cast<std::size_t>(k)] = acc;
        }
        return from_coeffs(a.den_, 0, std::move(out), w, a.ctx_);
    }

    // q -> q^k; realizes f(k tau) from f(tau).
    friend QExp substitute_power(const QExp& a, long k) {
        if (k < 1) throw series_error("substitute_power needs a positive integer");
        if (k == 1) return a;
        QExp r;
        r.den_ = a.den_;
        r.lead_ = a.lead_ * k;
        r.bound_ = a.bound_ * k;
        r.ctx_ = a.ctx_;
        if (!a.is_zero()) {
            r.c_.assign(static_cast<std::size_t>((a.c_.size() - 1) * k + 1), traits::zero(a.ctx_));
            for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i * k] = a.c_[i];
        }
        r.normalize();
        return r;
    }

    friend QExp truncate_q(const QExp& a, const Rat& order) {
        QExp r = a;
        r.bound_ = std::min(r.bound_, rat_floor_scaled(order, a.den_));
        if (r.lead_ > r.bound_) r.lead_ = r.bound_;
        r.normalize();
        return r;
    }

  private:
    int den_ = 1;
    long lead_ = 0;
    long bound_ = 0;
    std::vector<C> c_;
    context_type ctx_{};

    C stored(long k) const {
        // offset from lead_, zero outside the stored vector
        if (k < 0 || k >= static_cast<long>(c_.size())) return traits::zero(ctx_);
        return c_[static_cast<std::size_t>(k)];
    }

    // Restores: trimmed leading/trailing zeros, stored window inside bound,
    // minimal branch denominator (support gcd-reduced). Pessimistic floor
    // rounding when the knowledge bound moves to a coarser lattice; that
    // rounding can push the last stored slot out of the window, so trimming
    // and reduction repeat until both invariants hold.
    void normalize() {
        while (true) {
            if (static_cast<long>(c_.size()) > bound_ - lead_)
                c_.resize(static_cast<std::size_t>(std::max(0L, bound_ - lead_)));
            std::size_t first = 0;
            while (first < c_.size() && traits::is_zero(c_[first])) ++first;
            if (first == c_.size()) {
                c_.clear();
                lead_ = bound_ = floor_div(bound_, den_);
                den_ = 1;
                return;
            }
            if (first > 0) {
                c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
                lead_ += static_cast<long>(first);
            }
            while (!c_.empty() && traits::is_zero(c_.back())) c_.pop_back();
            long g = den_;
            for (std::size_t i = 0; i < c_.size() && g > 1; ++i)
                if (!traits::is_zero(c_[i]))
                    g = std::gcd(g, std::abs(lead_ + static_cast<long>(i)));
            if (g <= 1) return;
            std::vector<C> packed;
            packed.reserve(c_.size() / static_cast<std::size_t>(g) + 1);
            for (std::size_t i = 0; i < c_.size(); i += static_cast<std::size_t>(g))
                packed.push_back(c_[i]);
            c_ = std::move(packed);
            lead_ /= g;
            bound_ = floor_div(bound_, g);
            den_ = static_cast<int>(den_ / g);
        }
    }

    static std::pair<QExp, QExp> aligned(const QExp& a, const QExp& b) {
        if (a.den_ == b.den_) return {a, b};
        const long l = std::lcm<long>(a.den_, b.den_);
        return {a.stretched(l / a.den_), b.stretched(l / b.den_)};
    }

    QExp stretched(long f) const {
        if (f == 1) return *this;
        QExp r;
        r.den_ = static_cast<int>(den_ * f);
        r.lead_ = lead_ * f;
        r.bound_ = bound_ * f;
        r.ctx_ = ctx_;
        if (!c_.empty()) {
            r.c_.assign(static_cast<std::size_t>((c_.size() - 1) * f + 1), traits::zero(ctx_));
            for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * f] = c_[i];
        }
        return r;
    }

    static QExp add_sub(const QExp& a, const QExp& b, bool minus) {
        auto [x, y] = aligned(a, b);
        auto ctx = merge(a.ctx_, b.ctx_);
        const long bound = std::min(x.bound_, y.bound_);
        if (x.is_zero() && y.is_zero())
            return from_coeffs(x.den_, bound, {}, bound, ctx);
        const long lead = x.is_zero() ? y.lead_ : (y.is_zero() ? x.lead_ : std::min(x.lead_, y.lead_));
        const long len = std::max(0L, bound - lead);
        std::vector<C> out(static_cast<std::size_t>(len), traits::zero(ctx));
        for (long k = 0; k < len; ++k) {
            C xa = x.stored(lead + k - x.lead_);
            C yb = y.stored(lead + k - y.lead_);
            if (minus)
                out[static_cast<std::size_t>(k)] = xa - yb;
            else
                out[static_cast<std::size_t>(k)] = xa + yb;
        }
        return from_coeffs(x.den_, lead, std::move(out), bound, ctx);
    }

    // (1 + v)^alpha by the binomial recurrence, scaled by `unit_factor` and
    // carried to the exponent lattice refined by den(alpha).
    QExp binomial_power(const Rat& alpha, const C& unit_factor) const {
        const long q = rat_den_long(alpha);
        const C& c0 = c_.front();
        const long w = bound_ - lead_;
        std::vector<C> v(static_cast<std::size_t>(w), traits::zero(ctx_));
        for (long k = 1; k < w; ++k) v[static_cast<std::size_t>(k)] = stored(k) / c0;
        std::vector<C> out(static_cast<std::size_t>(w), traits::zero(ctx_));
        out[0] = traits::one(ctx_);
        for (long k = 1; k < w; ++k) {
            C acc = traits::zero(ctx_);
            for (long j = 1; j <= k; ++j) {
                if (traits::is_zero(v[static_cast<std::size_t>(j)])) continue;
                Rat factor = (alpha * j - rat_of(k - j, 1)) / k;
                acc = acc + traits::mul_rat(v[static_cast<std::size_t>(j)] *
                                                out[static_cast<std::size_t>(k - j)],
                                            factor);
            }
            out[static_cast<std::size_t>(k)] = acc;
        }
        // result exponents: (lead*p + j*q) / (den*q)
        const long p = rat_num_long(alpha);
        std::vector<C> spread(static_cast<std::size_t>((w - 1) * q + 1), traits::zero(ctx_));
        for (long k = 0; k < w; ++k)
            spread[static_cast<std::size_t>(k * q)] = unit_factor * out[static_cast<std::size_t>(k)];
        return from_coeffs(static_cast<int>(den_ * q), lead_ * p, std::move(spread),
                           lead_ * p + w * q, ctx_);
    }
};

// Comparison options; the complex backend requires an explicit tolerance.
template <class C>
struct eq_options {};

template <>
struct eq_options<BigComplex> {
    std::optional<BigFloat> tol;
};

template <class C>
struct EqResult {
    bool equal = true;
    std::optional<Rat> mismatch_exp;
    std::optional<C> lhs, rhs;
    double max_abs_err = 0.0;  // complex backend only; exact backends report 0
};

// Compares a and b strictly below exponent M. Exact for the rational
// backend; the complex backend compares |difference| against opts.tol.
template <class C>
EqResult<C> eq_to_order(const QExp<C>& a, const QExp<C>& b, const Rat& M,
                        const eq_options<C>& opts = {}) {
    if constexpr (std::is_same_v<C, BigComplex>) {
        if (!opts.tol) throw series_error("missing tolerance in complex backend comparison");
    }
    if (a.order_q() < M || b.order_q() < M)
        throw precision_error("insufficient precision: series known to q^" +
                              rat_str(std::min(a.order_q(), b.order_q())) +
                              ", comparison requested at q^" + rat_str(M));
    QExp<C> d = a - b;
    EqResult<C> res;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Rat e = d.exp_at(i);
        if (e >= M) break;
        const C& c = d.coeff_at(i);
        if (coeff_traits<C>::is_zero(c)) continue;
        bool bad = true;
        if constexpr (std::is_same_v<C, BigComplex>) {
            if (!opts.tol) throw series_error("missing tolerance in complex backend comparison");
            const double mag = c.abs().to_double();
            res.max_abs_err = std::max(res.max_abs_err, mag);
            bad = *opts.tol < c.abs();
        }
        if (bad && res.equal) {
            res.equal = false;
            res.mismatch_exp = e;
            res.lhs = a.coeff(e);
            res.rhs = b.coeff(e);
            if constexpr (!std::is_same_v<C, BigComplex>) break;
        }
    }
    return res;
}

using QExpR = QExp<Rat>;
using QExpC = QExp<BigComplex>;

// Zeroes complex coefficients with |c| <= tol. Needed whenever a leading
// coefficient cancels exactly in the mathematics but only down to roundoff in
// the inexact backend; later branch choices must not key off the residue.
inline QExpC chopped(const QExpC& a, const BigFloat& tol) {
    if (a.is_zero()) return a;
    const int den = a.branch_den();
    const long bound = rat_floor_scaled(a.order_q(), den);
    const long lead = rat_floor_scaled(a.lead_exp(), den);
    std::vector<BigComplex> cs;
    cs.reserve(a.size());
    auto ctx = a.context();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const BigComplex& c = a.coeff_at(i);
        cs.push_back(tol < c.abs() ? c : coeff_traits<BigComplex>::zero(ctx));
    }
    return QExpC::from_coeffs(den, lead, std::move(cs), bound, ctx);
}

// Deliberate rational -> complex conversion (the only bridge between the two
// backends; nothing converts implicitly).
inline QExpC to_complex(const QExpR& a, mpfr_prec_t prec) {
    coeff_traits<BigComplex>::context ctx{prec};
    const int den = a.branch_den();
    const long bound = rat_floor_scaled(a.order_q(), den);
    if (a.is_zero()) return QExpC::from_coeffs(den, bound, {}, bound, ctx);
    const long lead = rat_floor_scaled(a.lead_exp(), den);
    std::vector<BigComplex> cs;
    cs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) cs.push_back(BigComplex::from_rat(a.coeff_at(i), prec));
    return QExpC::from_coeffs(den, lead, std::move(cs), bound, ctx);
}

}  // namespace msk
