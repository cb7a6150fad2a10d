#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>
#include <variant>

#include "msk/expr.hpp"
#include "msk/frobenius.hpp"
#include "msk/groups.hpp"

namespace msk::verify {

using expr::ExprPtr;

// --- checkable units -------------------------------------------------------

struct SeriesEq {
    std::string label;
    ExprPtr lhs, rhs;
};

// Applies the normalized Schwarzian to `input`, decomposes in the
// {theta2^8, phi4} basis and compares against (root_a^2, root_b^2). When the
// table leaves the cusp orientation of its labels open, `swapped` carries the
// other assignment and the verdict records which one held.
struct FitEq {
    std::string label;
    ExprPtr input;
    Rat root_a, root_b;
    std::optional<std::pair<Rat, Rat>> swapped;
};

struct FrobeniusCase {
    std::string label;
    Rat a_norm, b_norm;  // coefficients on theta2^8 and phi4
    long order = 40;
    bool expect_log = false;
};

struct FrobeniusVanishing {
    std::string label;
};

struct DegreeCheck {
    std::string label;
    groups::GroupId gid;
    long n1 = 1, n2 = 1;
    long expected_d = 1;
    long max_poly_deg = -1;  // degree of the tabulated rational function, when present
};

using SubCheck = std::variant<SeriesEq, FitEq, FrobeniusCase, FrobeniusVanishing, DegreeCheck>;

struct IdentityRecord {
    std::string id;
    std::string anchor;  // citation of the mathematical statement being checked
    bool complex_backend = false;
    mpfr_prec_t precision = 256;
    long default_order = 50;
    std::vector<SubCheck> checks;
    std::vector<std::string> warnings;  // convention notes emitted with every verdict
};

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "?";
}

struct Mismatch {
    std::string where;
    std::optional<Rat> exponent;
    std::string lhs, rhs;
};

struct Verdict {
    std::string id;
    Status status = Status::skipped;
    long order = 0;
    std::optional<Mismatch> first_mismatch;
    std::string skip_reason;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;    // e.g. fit orientation reports
    double max_abs_err = 0.0;          // complex backend: largest |lhs - rhs| seen
    double seconds = 0.0;
};

// --- engine ----------------------------------------------------------------

namespace detail {

constexpr long kOrderBudget = 4096;  // resource guard for runaway requests
constexpr long kEvalCushion = 8;     // extra working order for division/derivative losses

template <class C>
struct Engine {
    expr::EvalEnv<C> env;
    long check_order;
    eq_options<C> opts;
    Verdict& verdict;

    void note(const std::string& s) { verdict.notes.push_back(s); }

    void fail(const std::string& where, const std::optional<Rat>& e, const std::string& l,
              const std::string& r) {
        if (verdict.status != Status::fail) {
            verdict.status = Status::fail;
            verdict.first_mismatch = Mismatch{where, e, l, r};
        }
    }

    void track_err(double e) { verdict.max_abs_err = std::max(verdict.max_abs_err, e); }

    void run(const SeriesEq& c) {
        QExp<C> lhs = expr::eval(c.lhs, env);
        QExp<C> rhs = expr::eval(c.rhs, env);
        auto r = eq_to_order(lhs, rhs, Rat(check_order), opts);
        track_err(r.max_abs_err);
        if (!r.equal)
            fail(c.label, r.mismatch_exp, coeff_traits<C>::str(*r.lhs), coeff_traits<C>::str(*r.rhs));
    }

    bool matches(const C& got, const Rat& want) {
        if constexpr (std::is_same_v<C, Rat>) {
            return got == want;
        } else {
            C diff = got - coeff_traits<C>::from_rat(want, env.ctx);
            track_err(diff.abs().to_double());
            return !(*opts.tol < diff.abs());
        }
    }

    void run(const FitEq& c) {
        QExp<C> h = expr::eval(c.input, env);
        auto fit = schwarz::fit_weight4(schwarz::schwarzian_norm(h), check_order, opts);
        track_err(fit.max_abs_err);
        if (!fit.residual_ok) {
            fail(c.label + ": residual (fitted a = " + coeff_traits<C>::str(fit.coeff_theta2_8) +
                     ", b = " + coeff_traits<C>::str(fit.coeff_phi4) + ")",
                 fit.mismatch_exp, "nonzero residual", "0");
            return;
        }
        auto matches_pair = [&](const Rat& ra, const Rat& rb) {
            if (!matches(fit.coeff_theta2_8, ra * ra) || !matches(fit.coeff_phi4, rb * rb))
                return false;
            if constexpr (std::is_same_v<C, Rat>) {
                // fit-based records also pin the recovered square roots exactly
                if (!fit.squares || fit.squares->first != ra || fit.squares->second != rb)
                    return false;
            }
            return true;
        };
        if (matches_pair(c.root_a, c.root_b)) {
            if (c.swapped) note(c.label + ": orientation as-listed");
            return;
        }
        if (c.swapped && matches_pair(c.swapped->first, c.swapped->second)) {
            note(c.label + ": orientation swapped");
            return;
        }
        fail(c.label + ": fitted (" + coeff_traits<C>::str(fit.coeff_theta2_8) + ", " +
                 coeff_traits<C>::str(fit.coeff_phi4) + ")",
             std::nullopt, rat_str(c.root_a * c.root_a), rat_str(c.root_b * c.root_b));
    }

    void run(const FrobeniusCase& c) {
        if constexpr (!std::is_same_v<C, Rat>) {
            throw series_error("Frobenius checks run on the rational backend");
        } else {
            // the case order is a floor; a larger suite-wide order deepens the sweep
            const long ord = std::max(c.order, check_order);
            const long work = ord + detail::kEvalCushion;
            QExpR S = frobenius::weight4_series(c.a_norm, c.b_norm, work);
            auto target = frobenius::make_target(S);
            auto sol = frobenius::solve_h(target, work);
            if (sol.logarithmic != c.expect_log) {
                fail(c.label + ": logarithmic flag", std::nullopt,
                     sol.logarithmic ? "true" : "false", c.expect_log ? "true" : "false");
                return;
            }
            QExpR back = schwarz::schwarzian_norm(sol.h);
            auto r = eq_to_order(back, S, Rat(ord), {});
            if (!r.equal)
                fail(c.label + ": round trip", r.mismatch_exp, rat_str(*r.lhs), rat_str(*r.rhs));
        }
    }

    void run(const FrobeniusVanishing& c) {
        if constexpr (!std::is_same_v<C, Rat>) {
            throw series_error("Frobenius checks run on the rational backend");
        } else {
            QExpR S = frobenius::weight4_series(Rat(1), Rat(0), 20);
            try {
                frobenius::indicial(S);
                fail(c.label, std::nullopt, "indicial exponent returned", "rejection");
            } catch (const series_error& e) {
                if (std::string(e.what()).find("vanishes at the cusp") == std::string::npos)
                    fail(c.label, std::nullopt, e.what(), "cusp-vanishing rejection");
            }
        }
    }

    void run(const DegreeCheck& c) {
        auto kd = groups::kernel_descriptor(c.gid);
        Rat g = groups::genus(c.gid.order(), kd.m1, kd.m2);
        long d = groups::covering_degree(g, c.gid.order(), kd.m1, kd.m2, c.n1, c.n2);
        if (d != c.expected_d) {
            fail(c.label + ": covering degree", std::nullopt, std::to_string(d),
                 std::to_string(c.expected_d));
            return;
        }
        if (c.max_poly_deg >= 0 && c.max_poly_deg != c.expected_d)
            fail(c.label + ": rational function degree", std::nullopt,
                 std::to_string(c.max_poly_deg), std::to_string(c.expected_d));
    }
};

}  // namespace detail

// Evaluates one record. Evaluation errors are reported as skipped (with the
// underlying reason), assertion failures as fail.
inline Verdict run_identity(const IdentityRecord& rec, long order = 0) {
    Verdict v;
    v.id = rec.id;
    v.order = order > 0 ? order : rec.default_order;
    v.warnings = rec.warnings;
    if (v.order > detail::kOrderBudget) {
        v.status = Status::skipped;
        v.skip_reason = "insufficient precision budget: order " + std::to_string(v.order) +
                        " exceeds " + std::to_string(detail::kOrderBudget);
        return v;
    }
    const auto t0 = std::chrono::steady_clock::now();
    v.status = Status::pass;
    try {
        if (rec.complex_backend) {
            // deeper windows amplify roundoff through the series recurrences;
            // orders past the record default get extra working precision and
            // the tolerance follows the effective precision
            const mpfr_prec_t prec =
                rec.precision +
                8 * static_cast<mpfr_prec_t>(std::max(0L, v.order - rec.default_order));
            detail::Engine<BigComplex> eng{
                {v.order + detail::kEvalCushion, {prec}},
                v.order,
                {BigFloat::pow2(-static_cast<long>(prec) / 2, prec)},
                v};
            for (const auto& c : rec.checks) {
                std::visit([&](const auto& chk) { eng.run(chk); }, c);
                if (v.status == Status::fail) break;
            }
        } else {
            detail::Engine<Rat> eng{{v.order + detail::kEvalCushion, {}}, v.order, {}, v};
            for (const auto& c : rec.checks) {
                std::visit([&](const auto& chk) { eng.run(chk); }, c);
                if (v.status == Status::fail) break;
            }
        }
    } catch (const std::exception& e) {
        v.status = Status::skipped;
        v.skip_reason = e.what();
    }
    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

// --- the catalog -----------------------------------------------------------

namespace detail {

using namespace expr::build;
using forms::FormName;

inline ExprPtr theta_pow(FormName f, long n) { return powi(form(f), n); }

inline void add_tetra_row(IdentityRecord& rec, long n1, long n2, long d, std::vector<long> P,
                          std::vector<long> Q) {
    const long maxdeg = static_cast<long>(std::max(P.size(), Q.size())) - 1;
    const std::string label =
        "row (" + std::to_string(n1) + "," + std::to_string(n2) + "," + std::to_string(d) + ")";
    rec.checks.push_back(FitEq{label, ratfn(poly(P), poly(Q), form(FormName::t_haupt)),
                               rat_of(n1, 6), rat_of(n2, 3),
                               std::make_pair(rat_of(n2, 6), rat_of(n1, 3))});
    rec.checks.push_back(DegreeCheck{label, {groups::Family::A4, 0, groups::Variant::primary},
                                     n1, n2, d, maxdeg});
}

inline void add_dihedral_row(IdentityRecord& rec, long n, long n1, long n2, long d,
                             std::vector<long> P, std::vector<long> Q) {
    const long maxdeg = static_cast<long>(std::max(P.size(), Q.size())) - 1;
    const std::string label = "row (" + std::to_string(n) + "," + std::to_string(n1) + "," +
                              std::to_string(n2) + "," + std::to_string(d) + ")";
    ExprPtr t = fracpow(form(FormName::one_minus_lambda), rat_of(1, n));
    rec.checks.push_back(FitEq{label, ratfn(poly(P), poly(Q), t), rat_of(n2, 2 * n), rat_of(n1, 2),
                               std::make_pair(rat_of(n1, 2 * n), rat_of(n2, 2))});
    rec.checks.push_back(DegreeCheck{label, {groups::Family::D2n, n, groups::Variant::fricke},
                                     n1, n2, d, maxdeg});
}

}  // namespace detail

// One record per checkable identity; adding a record requires no engine
// change. Anchors cite the mathematical statement, warnings carry the
// convention notes that the verification reports rather than silently fixes.
inline std::vector<IdentityRecord> catalog() {
    using namespace expr::build;
    using forms::FormName;
    using detail::theta_pow;
    std::vector<IdentityRecord> recs;

    {
        IdentityRecord r;
        r.id = "theta-jacobi";
        r.anchor = "Jacobi quartic identity theta3^4 = theta2^4 + theta4^4";
        r.checks.push_back(SeriesEq{"theta3^4 = theta2^4 + theta4^4", theta_pow(FormName::theta3, 4),
                                    add(theta_pow(FormName::theta2, 4), theta_pow(FormName::theta4, 4))});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "e4-theta";
        r.anchor = "weight-4 Eisenstein series in the level-2 theta basis";
        r.checks.push_back(SeriesEq{"E4 = theta2^8 + (theta3 theta4)^4", form(FormName::E4),
                                    add(form(FormName::theta2_8), form(FormName::phi4))});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "theta-eta-quotients";
        r.anchor = "eta-quotient expressions for the theta constants";
        r.warnings.push_back(
            "the classical eta-quotient expressions expand with q doubled relative to the theta "
            "products: they equal theta_i(2 tau), and the check relabels q accordingly");
        r.checks.push_back(SeriesEq{
            "2 eta(4t)^2/eta(2t) = theta2(2t)",
            div(scale(Rat(2), powi(form(FormName::eta_4), 2)), form(FormName::eta_2)),
            subst(form(FormName::theta2), 2)});
        r.checks.push_back(SeriesEq{
            "eta(2t)^5/(eta(t)^2 eta(4t)^2) = theta3(2t)",
            div(powi(form(FormName::eta_2), 5),
                mul(powi(form(FormName::eta_1), 2), powi(form(FormName::eta_4), 2))),
            subst(form(FormName::theta3), 2)});
        r.checks.push_back(SeriesEq{"eta(t)^2/eta(2t) = theta4(2t)",
                                    div(powi(form(FormName::eta_1), 2), form(FormName::eta_2)),
                                    subst(form(FormName::theta4), 2)});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "lambda-schwarz";
        r.anchor = "normalized Schwarzian of the elliptic lambda function equals E4/4";
        r.checks.push_back(SeriesEq{"{lambda}/2pi^2 = E4/4", schwarz_of(form(FormName::lambda)),
                                    scale(Rat(1, 4), form(FormName::E4))});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "t-schwarz";
        r.anchor = "Schwarzian of the degree-1 hauptmodul of the tetrahedral kernel";
        r.checks.push_back(
            FitEq{"fit {t}/2pi^2", form(FormName::t_haupt), rat_of(1, 6), rat_of(1, 3), std::nullopt});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "tetra-table";
        r.anchor = "tetrahedral solution table: rational functions of the hauptmodul t";
        r.default_order = 30;
        detail::add_tetra_row(r, 1, 2, 3, {0, 1}, {-2, 1, 0, 1});
        detail::add_tetra_row(r, 1, 4, 7, {0, -14, 0, 0, 14, 0, 0, 1}, {-2, 0, 0, 7});
        detail::add_tetra_row(r, 5, 1, 9, {0, 0, 0, 0, 0, 16, 0, 0, 1},
                              {-256, 0, 0, 384, 0, 0, 240, 0, 0, 5});
        detail::add_tetra_row(r, 1, 5, 9, {0, -1, 0, 0, 2}, {10, 0, 0, -60, 0, 0, 12, 0, 0, 1});
        detail::add_tetra_row(r, 5, 2, 11, {256, 0, 0, 0, 0, 0, 528, 0, 0, 55},
                              {0, 0, 0, 0, 0, 352, 0, 0, 110, 0, 0, 1});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "dihedral-pow";
        r.anchor = "Schwarzian of (1-lambda)^r in the weight-4 basis";
        for (Rat rr : {rat_of(1, 2), rat_of(1, 3), rat_of(2, 5), rat_of(3, 4)}) {
            r.checks.push_back(FitEq{"r=" + rat_str(rr),
                                     fracpow(form(FormName::one_minus_lambda), rr), rr / 2,
                                     rat_of(1, 2), std::nullopt});
        }
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "dihedral-lambda";
        r.anchor = "Schwarzian of lambda^r in the conjugate basis {(theta2 theta3)^4, theta4^8}";
        for (Rat rr : {rat_of(1, 2), rat_of(1, 3)}) {
            r.checks.push_back(
                SeriesEq{"r=" + rat_str(rr), schwarz_of(fracpow(form(FormName::lambda), rr, true)),
                         add(scale(Rat(1, 4), form(FormName::theta2theta3_4)),
                             scale(rr * rr / 4, form(FormName::theta4_8)))});
        }
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "dihedral-2tau";
        r.anchor = "Schwarzian of lambda(2 tau)^r in the weight-4 basis";
        for (Rat rr : {rat_of(1, 2), rat_of(1, 3)}) {
            r.checks.push_back(FitEq{"r=" + rat_str(rr),
                                     fracpow(subst(form(FormName::lambda), 2), rr, true),
                                     rat_of(1, 4), rr, std::nullopt});
        }
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "dihedral-table";
        r.anchor = "dihedral solution table: rational functions of (1-lambda)^(1/n)";
        detail::add_dihedral_row(r, 2, 3, 1, 3, {-1, 3, -3, 1}, {1, 0, 3});
        detail::add_dihedral_row(r, 3, 3, 1, 4, {-1, 2, 0, -2, 1}, {1, 0, 0, 2});
        // t^(n2) family: h = (1-lambda)^(n2/n) with gcd(n, n2) = 1 and degree n2
        for (auto [n, n2] : {std::pair<long, long>{3, 2}, {4, 3}, {5, 2}}) {
            const std::string label = "row (" + std::to_string(n) + ",1," + std::to_string(n2) +
                                      "," + std::to_string(n2) + ")";
            r.checks.push_back(FitEq{label, fracpow(form(FormName::one_minus_lambda), rat_of(n2, n)),
                                     rat_of(n2, 2 * n), rat_of(1, 2), std::nullopt});
            r.checks.push_back(DegreeCheck{
                label, {groups::Family::D2n, n, groups::Variant::fricke}, 1, n2, n2, -1});
        }
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "octa-schwarz";
        r.anchor = "octahedral hauptmodul pair from the degree-4 relation to (1-lambda)^(1/3)";
        r.complex_backend = true;
        r.default_order = 30;
        ExprPtr x = fracpow(form(FormName::one_minus_lambda), rat_of(1, 3));
        ExprPtr u = add(num(Rat(1)), add(x, powi(x, 2)));          // 1 + x + x^2
        ExprPtr s = sqrt(u);                                       // principal branch, s(0) = +sqrt(3)
        ExprPtr sqrt3i = mul(imag(Rat(1)), sqrt(num(Rat(3))));     // i sqrt(3)
        ExprPtr den = sub(x, num(Rat(1)));
        ExprPtr hplus = sqrt(div(add(mul(sqrt3i, add(x, num(Rat(1)))), mul(imag(Rat(2)), s)), den));
        ExprPtr hminus = sqrt(div(chop(sub(mul(sqrt3i, add(x, num(Rat(1)))), mul(imag(Rat(2)), s))), den));
        ExprPtr two_i_sqrt3 = mul(imag(Rat(2)), sqrt(num(Rat(3))));
        std::vector<ExprPtr> pn = {num(Rat(1)), num(Rat(0)), two_i_sqrt3, num(Rat(0)), num(Rat(1))};
        std::vector<ExprPtr> pd = {num(Rat(1)), num(Rat(0)), neg(two_i_sqrt3), num(Rat(0)),
                                   num(Rat(1))};
        r.checks.push_back(SeriesEq{"x-relation", x, ratfn(pn, pd, hplus)});
        r.checks.push_back(SeriesEq{"h- * h+ = 1", mul(hminus, hplus), num(Rat(1))});
        r.checks.push_back(FitEq{"fit {h+}/2pi^2", hplus, rat_of(1, 6), rat_of(1, 4), std::nullopt});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "omega2-lambda";
        r.anchor = "omega2 as a rational function of lambda";
        r.warnings.push_back(
            "the commonly printed form 16 lambda^2/(lambda - 1) has the wrong sign: the leading "
            "coefficients force omega2 = 16 lambda^2/(1 - lambda), which is what is verified");
        r.checks.push_back(SeriesEq{"omega2 = 16 lambda^2/(1-lambda)", form(FormName::omega2),
                                    div(scale(Rat(16), powi(form(FormName::lambda), 2)),
                                        form(FormName::one_minus_lambda))});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "hyperelliptic";
        r.anchor = "hyperelliptic relation between (lambda-2)/lambda and omega2";
        r.checks.push_back(SeriesEq{"((lambda-2)/lambda)^2 = 1 + 64/omega2",
                                    powi(form(FormName::lam_over), 2),
                                    add(num(Rat(1)), div(num(Rat(64)), form(FormName::omega2)))});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "gamma04-haupt";
        r.anchor = "Schwarzian of the width-1 hauptmodul (lambda-2)/lambda * omega2^(1/2)";
        r.checks.push_back(FitEq{"fit {(lambda-2)/lambda * omega2^(1/2)}/2pi^2",
                                 mul(form(FormName::lam_over), fracpow(form(FormName::omega2), rat_of(1, 2))),
                                 rat_of(1, 4), Rat(1), std::nullopt});
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "schwarz-power-rule";
        r.anchor = "normalized Schwarzian of q^r is the constant r^2";
        r.warnings.push_back(
            "in normalized units {q, tau}/(2 pi^2) = 1; statements quoting {q, tau} = 4 pi^2 are "
            "inconsistent with the cusp expansion 2 pi^2 (n/m)^2 + O(q) that they feed");
        for (Rat rr : {rat_of(1, 5), rat_of(1, 2), Rat(1), Rat(3)}) {
            r.checks.push_back(
                SeriesEq{"r=" + rat_str(rr), schwarz_of(qpow(rr)), num(rr * rr)});
        }
        recs.push_back(std::move(r));
    }
    {
        IdentityRecord r;
        r.id = "frobenius-roundtrip";
        r.anchor = "series solutions of y'' + (F/2) y = 0 regenerate F through the Schwarzian";
        r.default_order = 40;
        for (long m1 = 2; m1 <= 6; ++m1)
            for (long m2 = 2; m2 <= 10; ++m2)
                for (long n1 = 1; n1 <= 3; ++n1)
                    for (long n2 = 1; n2 <= 3; ++n2) {
                        if (std::gcd(n1, m1) != 1 || std::gcd(n2, m2) != 1) continue;
                        const std::string label = "a=(" + std::to_string(n1) + "/" +
                                                  std::to_string(m1) + ")^2 b=(" +
                                                  std::to_string(n2) + "/" + std::to_string(m2) +
                                                  ")^2";
                        r.checks.push_back(FrobeniusCase{label, rat_of(n1 * n1, m1 * m1),
                                                         rat_of(n2 * n2, m2 * m2), 40, false});
                    }
        for (long rr : {1L, 2L, 3L})
            r.checks.push_back(FrobeniusCase{"integer r=" + std::to_string(rr), rat_of(1, 4),
                                             Rat(rr * rr), 40, true});
        r.checks.push_back(FrobeniusVanishing{"theta2^8-only coefficient rejected"});
        recs.push_back(std::move(r));
    }

    std::sort(recs.begin(), recs.end(),
              [](const IdentityRecord& a, const IdentityRecord& b) { return a.id < b.id; });
    return recs;
}

inline const IdentityRecord& find_record(const std::vector<IdentityRecord>& recs,
                                         const std::string& id) {
    for (const auto& r : recs)
        if (r.id == id) return r;
    throw series_error("no identity record with id '" + id + "'");
}

// Runs records (all, or a named one) on a small worker pool; report order is
// deterministic (catalog order, i.e. sorted by id).
inline std::vector<Verdict> run_suite(const std::vector<IdentityRecord>& recs, long order = 0,
                                      unsigned jobs = 0) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(recs.size() ? recs.size() : 1));
    std::vector<Verdict> out(recs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= recs.size()) return;
            out[i] = run_identity(recs[i], order);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

}  // namespace msk::verify
