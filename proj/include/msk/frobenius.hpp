#pragma once

#include "msk/logqexp.hpp"
#include "msk/schwarz.hpp"

namespace msk::frobenius {

// Normalized data for y'' + (F/2) y = 0 at the cusp: S = F/(2 pi^2) with
// integer exponents, holomorphic, constant term r^2. In the D = q d/dq
// coordinate the equation reads D^2 y = (S/4) y.
struct FrobeniusTarget {
    QExpR S;
    Rat r;

    FrobeniusTarget(QExpR s, Rat r_) : S(std::move(s)), r(std::move(r_)) {
        if (!S.is_zero() && S.lead_exp() < Rat(0))
            throw series_error("coefficient form not holomorphic at the cusp");
        Rat c0 = S.is_zero() ? Rat(0) : S.coeff(Rat(0));
        if (c0 != r * r)
            throw series_error("indicial mismatch: constant term " + rat_str(c0) +
                               " is not r^2 for r = " + rat_str(r));
        if (sgn(r) < 0) throw series_error("indicial exponent must be nonnegative");
    }
};

// Positive indicial root r with r^2 = constant term of S. A form vanishing
// at the cusp has no admissible exponent (the would-be solution picks up a
// logarithmic singularity); a non-square constant term has no rational root.
inline Rat indicial(const QExpR& S) {
    if (!S.is_zero() && S.lead_exp() < Rat(0))
        throw series_error("coefficient form not holomorphic at the cusp");
    if (S.is_zero() || S.lead_exp() > Rat(0) || S.order_q() <= Rat(0))
        throw series_error("form vanishes at the cusp: no admissible indicial exponent");
    Rat c0 = S.coeff(Rat(0));
    if (sgn(c0) == 0)
        throw series_error("form vanishes at the cusp: no admissible indicial exponent");
    if (sgn(c0) < 0) throw series_error("negative constant term: no positive indicial root");
    auto root = rat_sqrt(c0);
    if (!root)
        throw series_error("constant term " + rat_str(c0) +
                           " is not the square of a rational; the rational backend has no "
                           "indicial root (a complex-backend exponent would be needed)");
    return *root;
}

inline FrobeniusTarget make_target(const QExpR& S) { return FrobeniusTarget(S, indicial(S)); }

// Frobenius solution y1 = q^(r/2) (1 + ...) of D^2 y = (S/4) y from the
// recurrence n (n + r) a_n = sum_{j=1..n} (S_j / 4) a_{n-j}; the plus-root
// recurrence never divides by zero.
inline QExpR solve_y1(const FrobeniusTarget& target, long order) {
    if (order < 1) throw series_error("solve_y1 needs order >= 1");
    const long n_known = std::min<long>(order, rat_floor_scaled(target.S.order_q(), 1));
    std::vector<Rat> a(static_cast<std::size_t>(n_known), Rat(0));
    a[0] = 1;
    std::vector<Rat> s(static_cast<std::size_t>(n_known), Rat(0));
    for (long j = 1; j < n_known; ++j) s[static_cast<std::size_t>(j)] = target.S.coeff(Rat(j));
    for (long n = 1; n < n_known; ++n) {
        Rat acc(0);
        for (long j = 1; j <= n; ++j)
            acc += s[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(n - j)] / 4;
        a[static_cast<std::size_t>(n)] = acc / (Rat(n) * (Rat(n) + target.r));
    }
    // exponents r/2 + n on the lattice 1/(2 den(r)); lead slot = num(r)
    const long den = rat_den_long(target.r) * 2;
    const long lead = rat_num_long(target.r);
    std::vector<Rat> spread(static_cast<std::size_t>((n_known - 1) * den + 1), Rat(0));
    for (long n = 0; n < n_known; ++n)
        spread[static_cast<std::size_t>(n * den)] = a[static_cast<std::size_t>(n)];
    return QExpR::from_coeffs(static_cast<int>(den), lead, std::move(spread),
                              lead + n_known * den, {});
}

struct FrobeniusSolution {
    QExpR y1;
    LogQExpR h;
    bool logarithmic = false;
    Rat r;
};

// Schwarzian solution from reduction of order: Dh = y1^-2 = q^-r (1 + ...),
// integrated termwise (the q^0 slot, present exactly when r is an integer,
// integrates to log q). One code path covers both the generic and the
// logarithmic branch; round trip: schwarzian_norm(h) = S to the window.
inline FrobeniusSolution solve_h(const FrobeniusTarget& target, long order) {
    QExpR y1 = solve_y1(target, order);
    QExpR dh = inverse(y1 * y1);
    Rat log_coeff(0);
    std::vector<Rat> body;
    const int den = dh.branch_den();
    std::vector<std::pair<long, Rat>> terms;  // (lattice exponent, coefficient)
    long min_e = 0, max_e = 0;
    bool seen = false;
    for (std::size_t i = 0; i < dh.size(); ++i) {
        const Rat c = dh.coeff_at(i);
        if (sgn(c) == 0) continue;
        const Rat e = dh.exp_at(i);
        if (sgn(e) == 0) {
            log_coeff = c;
            continue;
        }
        const long le = rat_floor_scaled(e, den);
        terms.emplace_back(le, c / e);
        if (!seen || le < min_e) min_e = le;
        if (!seen || le > max_e) max_e = le;
        seen = true;
    }
    const long bound = rat_floor_scaled(dh.order_q(), den);
    QExpR h_body;
    if (!seen) {
        h_body = QExpR::from_coeffs(den, bound, {}, bound, {});
    } else {
        std::vector<Rat> cs(static_cast<std::size_t>(max_e - min_e + 1), Rat(0));
        for (auto& [le, c] : terms) cs[static_cast<std::size_t>(le - min_e)] = c;
        h_body = QExpR::from_coeffs(den, min_e, std::move(cs), bound, {});
    }
    FrobeniusSolution sol{std::move(y1), LogQExpR(log_coeff, std::move(h_body)), false, target.r};
    sol.logarithmic = rat_is_integer(target.r) && sgn(log_coeff) != 0;
    return sol;
}

// Builds S = a * theta2^8 + b * phi4 from normalized coefficients.
inline QExpR weight4_series(const Rat& a, const Rat& b, long order) {
    return mul_rat(forms::form_rational(forms::FormName::theta2_8, order), a) +
           mul_rat(forms::form_rational(forms::FormName::phi4, order), b);
}

}  // namespace msk::frobenius
