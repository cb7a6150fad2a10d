#pragma once

#include <optional>
#include <string>

#include "msk/mpcomplex.hpp"
#include "msk/rational.hpp"

namespace msk {

// Backend glue for series coefficients. Two backends exist: exact rationals
// and arbitrary-precision complex numbers. Mixing them is impossible by
// construction (distinct value types, no implicit conversion).
template <class C>
struct coeff_traits;

template <>
struct coeff_traits<Rat> {
    static constexpr bool exact = true;

    struct context {
        friend context merge(const context&, const context&) { return {}; }
    };

    static Rat zero(const context&) { return Rat(0); }
    static Rat one(const context&) { return Rat(1); }
    static Rat from_long(long x, const context&) { return Rat(x); }
    static Rat from_rat(const Rat& x, const context&) { return x; }
    static bool is_zero(const Rat& c) { return sgn(c) == 0; }
    static Rat mul_rat(const Rat& c, const Rat& r) { return c * r; }

    static std::optional<Rat> pow_rat(const Rat& c, const Rat& e, const context&) {
        return rat_pow_exact(c, e);
    }

    static std::string backend_name(const context&) { return "rational"; }
    static std::string str(const Rat& c) { return rat_str(c); }
};

template <>
struct coeff_traits<BigComplex> {
    static constexpr bool exact = false;

    struct context {
        mpfr_prec_t prec = 256;
        friend context merge(const context& a, const context& b) {
            return {std::max(a.prec, b.prec)};
        }
    };

    static BigComplex zero(const context& ctx) { return BigComplex(ctx.prec); }
    static BigComplex one(const context& ctx) { return BigComplex::from_long(1, ctx.prec); }
    static BigComplex from_long(long x, const context& ctx) { return BigComplex::from_long(x, ctx.prec); }
    static BigComplex from_rat(const Rat& x, const context& ctx) { return BigComplex::from_rat(x, ctx.prec); }
    static bool is_zero(const BigComplex& c) { return c.is_zero(); }
    static BigComplex mul_rat(const BigComplex& c, const Rat& r) {
        return c * BigComplex::from_rat(r, c.prec());
    }

    // Principal branch; always defined away from zero.
    static std::optional<BigComplex> pow_rat(const BigComplex& c, const Rat& e, const context&) {
        if (c.is_zero()) return std::nullopt;
        return c.pow_rat(e);
    }

    static std::string backend_name(const context& ctx) { return "complex" + std::to_string(ctx.prec); }
    static std::string str(const BigComplex& c) { return c.str(); }
};

}  // namespace msk
