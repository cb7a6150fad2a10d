#pragma once

#include <array>
#include <optional>
#include <utility>

#include "msk/forms.hpp"
#include "msk/logqexp.hpp"

namespace msk::schwarz {

// Everything is normalized by 2*pi^2: with D = q d/dq and g = D^2 h / Dh,
//
//     {h, tau} / (2 pi^2) = g^2 - 2 D(g),
//
// so the rational backend carries every identity whose series coefficients
// are rational. No floating pi anywhere.
template <class C>
QExp<C> schwarzian_from_dh(const QExp<C>& dh) {
    if (dh.is_zero()) throw series_error("h locally constant at truncation: Dh vanishes");
    QExp<C> g = theta_derivative(dh) / dh;
    return g * g - mul_rat(theta_derivative(g), Rat(2));
}

template <class C>
QExp<C> schwarzian_norm(const QExp<C>& h) {
    return schwarzian_from_dh(theta_derivative(h));
}

template <class C>
QExp<C> schwarzian_norm(const LogQExp<C>& h) {
    return schwarzian_from_dh(theta_derivative(h));
}

// (a h + b) / (c h + d) with an exact coefficient matrix [[a,b],[c,d]].
template <class C>
QExp<C> mobius_apply(const QExp<C>& h, const std::array<Rat, 4>& m) {
    if (sgn(m[0] * m[3] - m[1] * m[2]) == 0) throw series_error("Mobius matrix is singular");
    const long w = std::max(1L, rat_floor_scaled(h.order_q() - (h.is_zero() ? Rat(0) : h.lead_exp()), 1));
    auto ctx = h.context();
    auto cst = [&](const Rat& r) { return QExp<C>::constant_rat(r, w, ctx); };
    QExp<C> den = mul_rat(h, m[2]) + cst(m[3]);
    if (den.is_zero()) throw series_error("Mobius denominator vanishes to working order");
    return (mul_rat(h, m[0]) + cst(m[1])) / den;
}

template <class C>
struct FitResult {
    C coeff_theta2_8;           // multiplies theta2^8
    C coeff_phi4;               // multiplies (theta3 theta4)^4
    bool residual_ok = false;
    long checked_order = 0;
    std::optional<std::pair<Rat, Rat>> squares;  // (sqrt a, sqrt b) when both are rational squares
    std::optional<Rat> mismatch_exp;
    double max_abs_err = 0.0;
};

// Decomposes a holomorphic integer-exponent series in the weight-4 basis
// {theta2^8, (theta3 theta4)^4}. The basis is triangular in (q^0, q^1):
// phi4 = 1 - 16q + ... and theta2^8 = 256q + ..., so the two leading
// coefficients determine the fit and everything else is verification.
template <class C>
FitResult<C> fit_weight4(const QExp<C>& S, long checked_order,
                         const eq_options<C>& opts = {}) {
    using traits = coeff_traits<C>;
    if (checked_order < 2) throw series_error("fit_weight4 needs checked_order >= 2");
    if (!S.is_zero() && S.lead_exp() < Rat(0))
        throw series_error("not a holomorphic weight-4 candidate: leading exponent " +
                           rat_str(S.lead_exp()));
    if (S.order_q() < Rat(checked_order))
        throw precision_error("fit_weight4: series known only to q^" + rat_str(S.order_q()));
    auto ctx = S.context();
    const C s0 = S.coeff(Rat(0));
    const C s1 = S.coeff(Rat(1));
    FitResult<C> out;
    out.checked_order = checked_order;
    out.coeff_phi4 = s0;
    out.coeff_theta2_8 =
        (s1 + traits::mul_rat(s0, Rat(16))) * traits::from_rat(Rat(1, 256), ctx);

    QExp<C> model = out.coeff_theta2_8 * forms::form<C>(forms::FormName::theta2_8, checked_order, ctx) +
                    out.coeff_phi4 * forms::form<C>(forms::FormName::phi4, checked_order, ctx);
    auto eq = eq_to_order(S, model, Rat(checked_order), opts);
    out.residual_ok = eq.equal;
    out.mismatch_exp = eq.mismatch_exp;
    out.max_abs_err = eq.max_abs_err;

    if constexpr (std::is_same_v<C, Rat>) {
        auto ra = rat_sqrt(out.coeff_theta2_8);
        auto rb = rat_sqrt(out.coeff_phi4);
        if (ra && rb) out.squares = std::make_pair(*ra, *rb);
    }
    return out;
}

}  // namespace msk::schwarz
