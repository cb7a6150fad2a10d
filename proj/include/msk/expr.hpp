#pragma once

#include <memory>
#include <vector>

#include "msk/forms.hpp"
#include "msk/schwarz.hpp"

namespace msk::expr {

// Recipe trees for the identity catalog. Identities are data: a record is a
// pair of these trees plus expectations, and the evaluator below interprets
// them over either coefficient backend.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        form,        // named classical form
        const_c,     // re + im*i, both exact rationals
        q_power,     // q^value
        add,
        sub,
        mul,
        div,
        neg,
        pow_int,     // a^ipar
        frac_pow,    // a^value, optionally with the leading coefficient normalized to 1
        log1,
        exp0,
        subst_power, // q -> q^ipar
        schwarzian,  // {a, tau} / (2 pi^2)
        theta_d,     // q d/dq
        rational_fn, // P(a)/Q(a) with constant coefficient recipes
        chop,        // zero coefficients below the backend roundoff threshold
    };

    Kind kind;
    forms::FormName fname{};
    Rat value{};
    Rat value_im{};
    long ipar = 0;
    bool normalize_leading = false;
    ExprPtr a, b;
    std::vector<ExprPtr> pnum, pden;
};

namespace build {

inline ExprPtr node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

inline ExprPtr form(forms::FormName f) {
    Expr e{};
    e.kind = Expr::Kind::form;
    e.fname = f;
    return node(std::move(e));
}
inline ExprPtr num(Rat v) {
    Expr e{};
    e.kind = Expr::Kind::const_c;
    e.value = std::move(v);
    return node(std::move(e));
}
inline ExprPtr imag(Rat v) {
    Expr e{};
    e.kind = Expr::Kind::const_c;
    e.value_im = std::move(v);
    return node(std::move(e));
}
inline ExprPtr qpow(Rat r) {
    Expr e{};
    e.kind = Expr::Kind::q_power;
    e.value = std::move(r);
    return node(std::move(e));
}
inline ExprPtr binary(Expr::Kind k, ExprPtr x, ExprPtr y) {
    Expr e{};
    e.kind = k;
    e.a = std::move(x);
    e.b = std::move(y);
    return node(std::move(e));
}
inline ExprPtr add(ExprPtr x, ExprPtr y) { return binary(Expr::Kind::add, std::move(x), std::move(y)); }
inline ExprPtr sub(ExprPtr x, ExprPtr y) { return binary(Expr::Kind::sub, std::move(x), std::move(y)); }
inline ExprPtr mul(ExprPtr x, ExprPtr y) { return binary(Expr::Kind::mul, std::move(x), std::move(y)); }
inline ExprPtr div(ExprPtr x, ExprPtr y) { return binary(Expr::Kind::div, std::move(x), std::move(y)); }
inline ExprPtr neg(ExprPtr x) {
    Expr e{};
    e.kind = Expr::Kind::neg;
    e.a = std::move(x);
    return node(std::move(e));
}
inline ExprPtr powi(ExprPtr x, long n) {
    Expr e{};
    e.kind = Expr::Kind::pow_int;
    e.a = std::move(x);
    e.ipar = n;
    return node(std::move(e));
}
inline ExprPtr fracpow(ExprPtr x, Rat e_, bool normalize = false) {
    Expr e{};
    e.kind = Expr::Kind::frac_pow;
    e.a = std::move(x);
    e.value = std::move(e_);
    e.normalize_leading = normalize;
    return node(std::move(e));
}
inline ExprPtr sqrt(ExprPtr x) { return fracpow(std::move(x), Rat(1, 2)); }
inline ExprPtr scale(Rat c, ExprPtr x) { return mul(num(std::move(c)), std::move(x)); }
inline ExprPtr subst(ExprPtr x, long k) {
    Expr e{};
    e.kind = Expr::Kind::subst_power;
    e.a = std::move(x);
    e.ipar = k;
    return node(std::move(e));
}
inline ExprPtr schwarz_of(ExprPtr x) {
    Expr e{};
    e.kind = Expr::Kind::schwarzian;
    e.a = std::move(x);
    return node(std::move(e));
}
inline ExprPtr deriv(ExprPtr x) {
    Expr e{};
    e.kind = Expr::Kind::theta_d;
    e.a = std::move(x);
    return node(std::move(e));
}
inline ExprPtr chop(ExprPtr x) {
    Expr e{};
    e.kind = Expr::Kind::chop;
    e.a = std::move(x);
    return node(std::move(e));
}
inline ExprPtr ratfn(std::vector<ExprPtr> p, std::vector<ExprPtr> q, ExprPtr x) {
    Expr e{};
    e.kind = Expr::Kind::rational_fn;
    e.pnum = std::move(p);
    e.pden = std::move(q);
    e.a = std::move(x);
    return node(std::move(e));
}
inline std::vector<ExprPtr> poly(std::vector<long> coeffs) {
    std::vector<ExprPtr> out;
    out.reserve(coeffs.size());
    for (long c : coeffs) out.push_back(num(Rat(c)));
    return out;
}

}  // namespace build

template <class C>
struct EvalEnv {
    long order = 30;
    typename coeff_traits<C>::context ctx{};
};

template <class C>
QExp<C> eval(const ExprPtr& e, const EvalEnv<C>& env) {
    using K = Expr::Kind;
    using traits = coeff_traits<C>;
    switch (e->kind) {
        case K::form: return forms::form<C>(e->fname, env.order, env.ctx);
        case K::const_c: {
            if constexpr (std::is_same_v<C, Rat>) {
                if (sgn(e->value_im) != 0)
                    throw series_error("imaginary constant requires the complex backend");
                return QExp<C>::constant_rat(e->value, env.order, env.ctx);
            } else {
                return QExp<C>::constant(
                    BigComplex::from_rat_pair(e->value, e->value_im, env.ctx.prec), env.order,
                    env.ctx);
            }
        }
        case K::q_power: return QExp<C>::q_power(e->value, env.order, env.ctx);
        case K::add: return eval(e->a, env) + eval(e->b, env);
        case K::sub: return eval(e->a, env) - eval(e->b, env);
        case K::mul: return eval(e->a, env) * eval(e->b, env);
        case K::div: return eval(e->a, env) / eval(e->b, env);
        case K::neg: return -eval(e->a, env);
        case K::pow_int: return pow_int(eval(e->a, env), e->ipar);
        case K::frac_pow:
            return frac_power(eval(e->a, env), e->value, e->normalize_leading).series;
        case K::log1: return log1(eval(e->a, env));
        case K::exp0: return exp0(eval(e->a, env));
        case K::subst_power: return substitute_power(eval(e->a, env), e->ipar);
        case K::schwarzian: return schwarz::schwarzian_norm(eval(e->a, env));
        case K::theta_d: return theta_derivative(eval(e->a, env));
        case K::chop: {
            QExp<C> v = eval(e->a, env);
            if constexpr (std::is_same_v<C, BigComplex>)
                return chopped(v, BigFloat::pow2(-static_cast<long>(env.ctx.prec) / 2, env.ctx.prec));
            else
                return v;
        }
        case K::rational_fn: {
            auto scalar = [&](const ExprPtr& p) -> C {
                QExp<C> v = eval(p, env);
                if (v.is_zero()) return traits::zero(env.ctx);
                if (v.lead_exp() != Rat(0) || v.size() != 1)
                    throw series_error("polynomial coefficient recipe is not constant");
                return v.coeff_at(0);
            };
            std::vector<C> P, Q;
            P.reserve(e->pnum.size());
            Q.reserve(e->pden.size());
            for (const auto& p : e->pnum) P.push_back(scalar(p));
            for (const auto& p : e->pden) Q.push_back(scalar(p));
            return forms::rational_eval(P, Q, eval(e->a, env));
        }
    }
    throw series_error("unknown expression node");
}

}  // namespace msk::expr
