#pragma once

#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace msk {

// Exact arbitrary-precision rational. mpq_class keeps values canonical
// (gcd-reduced, positive denominator), which the serialization relies on.
using Rat = mpq_class;

struct series_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct enumeration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat_of(long num, long den = 1) {
    if (den == 0) throw series_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q" or "-p/q"; denominator must be positive after reduction.
inline Rat parse_rat(const std::string& text) {
    mpq_class r;
    if (r.set_str(text, 10) != 0)
        throw series_error("cannot parse rational '" + text + "'");
    if (r.get_den() == 0)
        throw series_error("rational with zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline long rat_to_long(const Rat& r) {
    if (!rat_is_integer(r) || !r.get_num().fits_slong_p())
        throw series_error("rational " + rat_str(r) + " is not a small integer");
    return r.get_num().get_si();
}

inline long rat_num_long(const Rat& r) {
    if (!r.get_num().fits_slong_p()) throw series_error("numerator out of range");
    return r.get_num().get_si();
}

inline long rat_den_long(const Rat& r) {
    if (!r.get_den().fits_slong_p()) throw series_error("denominator out of range");
    return r.get_den().get_si();
}

inline int rat_sign(const Rat& r) { return sgn(r); }

// Exact n-th root when one exists in the rationals.
inline std::optional<Rat> rat_nth_root(const Rat& r, unsigned long n) {
    if (n == 0) return std::nullopt;
    if (n == 1) return r;
    if (sgn(r) == 0) return Rat(0);
    if (sgn(r) < 0 && n % 2 == 0) return std::nullopt;
    mpz_class num = abs(r.get_num());
    mpz_class den = r.get_den();
    mpz_class rn, rd;
    const bool num_ok = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) != 0;
    const bool den_ok = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) != 0;
    if (!num_ok || !den_ok) return std::nullopt;
    if (sgn(r) < 0) rn = -rn;
    Rat root(rn, rd);
    root.canonicalize();
    return root;
}

inline std::optional<Rat> rat_sqrt(const Rat& r) { return rat_nth_root(r, 2); }

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    mpz_class num = base.get_num(), den = base.get_den();
    if (e < 0) {
        if (sgn(base) == 0) throw series_error("zero raised to a negative power");
        std::swap(num, den);
        e = -e;
    }
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e));
    Rat r(pn, pd);
    r.canonicalize();
    return r;
}

// base^(p/q) when the result is rational; nullopt otherwise.
inline std::optional<Rat> rat_pow_exact(const Rat& base, const Rat& exponent) {
    const long q = rat_den_long(exponent);
    auto root = rat_nth_root(base, static_cast<unsigned long>(q));
    if (!root) return std::nullopt;
    return rat_pow(*root, rat_num_long(exponent));
}

// floor(r * den) as a machine integer.
inline long rat_floor_scaled(const Rat& r, long den) {
    mpz_class num = r.get_num() * den;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw series_error("exponent bound out of range");
    return q.get_si();
}

inline long floor_div(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

}  // namespace msk
