#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "msk/qexp.hpp"

namespace msk::forms {

// Named classical forms and functions. eta_k means eta(k*tau); theta2_8,
// phi4 = (theta3*theta4)^4, theta4_8 and theta2theta3_4 are the weight-4
// building blocks; lam_over = (lambda-2)/lambda.
enum class FormName {
    eta_1,
    eta_2,
    eta_3,
    eta_4,
    eta_6,
    theta2,
    theta3,
    theta4,
    E4,
    E6,
    Delta,
    lambda,
    one_minus_lambda,
    omega2,
    t_haupt,
    theta2_8,
    phi4,
    theta4_8,
    theta2theta3_4,
    lam_over,
};

inline const std::vector<std::pair<FormName, const char*>>& form_names() {
    static const std::vector<std::pair<FormName, const char*>> names = {
        {FormName::eta_1, "eta_1"},
        {FormName::eta_2, "eta_2"},
        {FormName::eta_3, "eta_3"},
        {FormName::eta_4, "eta_4"},
        {FormName::eta_6, "eta_6"},
        {FormName::theta2, "theta2"},
        {FormName::theta3, "theta3"},
        {FormName::theta4, "theta4"},
        {FormName::E4, "E4"},
        {FormName::E6, "E6"},
        {FormName::Delta, "Delta"},
        {FormName::lambda, "lambda"},
        {FormName::one_minus_lambda, "one_minus_lambda"},
        {FormName::omega2, "omega2"},
        {FormName::t_haupt, "t_haupt"},
        {FormName::theta2_8, "theta2_8"},
        {FormName::phi4, "phi4"},
        {FormName::theta4_8, "theta4_8"},
        {FormName::theta2theta3_4, "theta2theta3_4"},
        {FormName::lam_over, "lam_over"},
    };
    return names;
}

inline std::string form_name(FormName f) {
    for (const auto& [k, v] : form_names())
        if (k == f) return v;
    throw series_error("unknown form");
}

inline FormName parse_form(const std::string& s) {
    for (const auto& [k, v] : form_names())
        if (s == v) return k;
    throw series_error("unknown form name '" + s + "'");
}

namespace detail {

// In place c *= (1 + sign * t^m), truncated to c.size() slots.
inline void mul_binomial(std::vector<Rat>& c, long m, int sign) {
    const long n = static_cast<long>(c.size());
    for (long i = n - 1; i >= m; --i) {
        if (sgn(c[static_cast<std::size_t>(i - m)]) == 0) continue;
        if (sign > 0)
            c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - m)];
        else
            c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - m)];
    }
}

// prod_{n>=1} (1 + sign * t^(a*n+b))^e on a window of `len` slots.
inline void mul_product(std::vector<Rat>& c, long a, long b, int sign, int e) {
    const long len = static_cast<long>(c.size());
    for (long n = 1; a * n + b < len; ++n)
        for (int k = 0; k < e; ++k) mul_binomial(c, a * n + b, sign);
}

inline std::vector<Rat> unit_window(long len) {
    std::vector<Rat> c(static_cast<std::size_t>(len), Rat(0));
    if (len > 0) c[0] = 1;
    return c;
}

// Packs integer-step coefficients onto the (1/den)-lattice at lead offset.
inline QExpR on_lattice(int den, long lead, const std::vector<Rat>& c) {
    std::vector<Rat> spread;
    spread.assign(c.empty() ? 0 : (c.size() - 1) * static_cast<std::size_t>(den) + 1, Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) spread[i * static_cast<std::size_t>(den)] = c[i];
    return QExpR::from_coeffs(den, lead, std::move(spread),
                              lead + static_cast<long>(c.size()) * den, {});
}

inline QExpR eta_q(long k, long order) {
    auto c = unit_window(order);
    mul_product(c, k, 0, -1, 1);
    return on_lattice(24, k, c);  // q^(k/24) * prod(1 - q^(k n))
}

inline QExpR build(FormName f, long order);

inline QExpR sigma_series(long order, int power, long scale, int sign) {
    // 1 + sign*scale * sum sigma_power(n) q^n
    std::vector<Rat> c(static_cast<std::size_t>(order), Rat(0));
    c[0] = 1;
    for (long d = 1; d < order; ++d) {
        mpz_class dp;
        mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(power));
        for (long m = d; m < order; m += d) c[static_cast<std::size_t>(m)] += Rat(dp);
    }
    for (long n = 1; n < order; ++n) c[static_cast<std::size_t>(n)] *= sign * scale;
    return on_lattice(1, 0, c);
}

inline QExpR build(FormName f, long order) {
    using FN = FormName;
    switch (f) {
        case FN::eta_1: return eta_q(1, order);
        case FN::eta_2: return eta_q(2, order);
        case FN::eta_3: return eta_q(3, order);
        case FN::eta_4: return eta_q(4, order);
        case FN::eta_6: return eta_q(6, order);
        case FN::theta2: {
            // 2 q^(1/8) prod (1-q^n)(1+q^n)^2
            auto c = unit_window(order);
            mul_product(c, 1, 0, -1, 1);
            mul_product(c, 1, 0, +1, 2);
            for (auto& x : c) x *= 2;
            return on_lattice(8, 1, c);
        }
        case FN::theta3:
        case FN::theta4: {
            // prod (1-q^n)(1±q^(n-1/2))^2, assembled directly in t = q^(1/2)
            const int s = f == FN::theta3 ? +1 : -1;
            auto c = unit_window(2 * order);
            mul_product(c, 2, 0, -1, 1);
            mul_product(c, 2, -1, s, 2);
            return QExpR::from_coeffs(2, 0, std::move(c), 2 * order, {});
        }
        case FN::E4: return sigma_series(order, 3, 240, +1);
        case FN::E6: return sigma_series(order, 5, 504, -1);
        case FN::Delta: {
            auto c = unit_window(order);
            mul_product(c, 1, 0, -1, 24);
            return on_lattice(1, 1, c);
        }
        case FN::omega2: {
            auto c = unit_window(order);
            mul_product(c, 1, 0, +1, 24);
            for (auto& x : c) x *= 4096;
            return on_lattice(1, 1, c);
        }
        case FN::lambda:
            return pow_int(build(FN::theta2, order), 4) / pow_int(build(FN::theta3, order), 4);
        case FN::one_minus_lambda: {
            auto l = build(FN::lambda, order);
            return QExpR::constant_rat(Rat(1), order) - l;
        }
        case FN::t_haupt: {
            auto num = build(FN::eta_2, order) * pow_int(build(FN::eta_3, order), 3);
            auto den = build(FN::eta_1, order) * pow_int(build(FN::eta_6, order), 3);
            return num / den;
        }
        case FN::theta2_8: return pow_int(build(FN::theta2, order), 8);
        case FN::phi4: return pow_int(build(FN::theta3, order) * build(FN::theta4, order), 4);
        case FN::theta4_8: return pow_int(build(FN::theta4, order), 8);
        case FN::theta2theta3_4:
            return pow_int(build(FN::theta2, order) * build(FN::theta3, order), 4);
        case FN::lam_over: {
            auto l = build(FN::lambda, order);
            return (l - QExpR::constant_rat(Rat(2), order)) / l;
        }
    }
    throw series_error("unknown form");
}

}  // namespace detail

// Expansion of a named form, exact to at least O(q^order). Rational
// coefficients always; memoized per name at the highest order seen so far
// (a lower order reuses the cached entry by truncation). The cache never
// exposes partially built entries: values are inserted complete, under lock.
inline QExpR form_rational(FormName f, long order) {
    if (order < 1) throw series_error("form expansion needs order >= 1");
    static std::mutex mu;
    static std::map<FormName, QExpR> cache;
    {
        std::scoped_lock lock(mu);
        auto it = cache.find(f);
        if (it != cache.end() && it->second.order_q() >= order) {
            QExpR hit = it->second;
            return truncate_q(hit, Rat(order));
        }
    }
    QExpR fresh = detail::build(f, order);
    {
        std::scoped_lock lock(mu);
        auto it = cache.find(f);
        if (it == cache.end() || it->second.order_q() < fresh.order_q()) cache.insert_or_assign(f, fresh);
    }
    return fresh;
}

template <class C>
QExp<C> form(FormName f, long order, typename coeff_traits<C>::context ctx = {}) {
    if constexpr (std::is_same_v<C, Rat>) {
        (void)ctx;
        return form_rational(f, order);
    } else {
        return to_complex(form_rational(f, order), ctx.prec);
    }
}

// Horner evaluation of P(t)/Q(t) in a series.
template <class C>
QExp<C> rational_eval(const std::vector<C>& P, const std::vector<C>& Q, const QExp<C>& t) {
    auto ctx = t.context();
    const long window = std::max(1L, rat_floor_scaled(t.is_zero() ? t.order_q()
                                                                  : t.order_q() - t.lead_exp(),
                                                      1));
    auto horner = [&](const std::vector<C>& coeffs) {
        QExp<C> acc = QExp<C>::zero(window, ctx);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * t + QExp<C>::constant(*it, window, ctx);
        return acc;
    };
    QExp<C> den = horner(Q);
    if (den.is_zero()) throw series_error("denominator series zero to working order");
    return horner(P) / den;
}

inline std::vector<Rat> rat_coeffs(std::vector<long> v) {
    std::vector<Rat> out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace msk::forms
