// msk - verification kernel and CLI for level-2 modular Schwarzian equations.
//
// Subcommands: expand, schwarzian, fit, frobenius, classify, table, cosets,
// verify. Plain reports go to stdout, diagnostics to stderr; --json switches
// every subcommand to its documented JSON schema. Exit codes: 0 success,
// 1 verification failure, 2 usage error, 3 computation error.

#include <iostream>

#include <CLI11.hpp>

#include "msk/frobenius.hpp"
#include "msk/serialize.hpp"

namespace {

using namespace msk;

struct Shared {
    long order = 30;
    std::string backend = "rational";
    long precision = 256;
    bool as_json = false;
};

void add_shared(CLI::App* cmd, Shared& s, bool with_backend = true) {
    cmd->add_option("--order", s.order, "truncation order (series mod O(q^order))")
        ->check(CLI::PositiveNumber);
    if (with_backend) {
        cmd->add_option("--backend", s.backend, "coefficient backend")
            ->check(CLI::IsMember({"rational", "complex"}));
        cmd->add_option("--precision", s.precision, "binary precision for the complex backend")
            ->check(CLI::Range(64L, 65536L));
    }
    cmd->add_flag("--json", s.as_json, "emit JSON");
}

// Builds the requested series (named form, optionally raised to a fractional
// power with its leading coefficient normalized away).
template <class C>
QExp<C> build_series(const std::string& name, const std::string& power,
                     const expr::EvalEnv<C>& env) {
    QExp<C> h = forms::form<C>(forms::parse_form(name), env.order, env.ctx);
    if (!power.empty()) h = frac_power(h, parse_rat(power), true).series;
    return h;
}

int cmd_expand(const Shared& s, const std::string& name, const std::string& power) {
    if (s.backend == "rational") {
        expr::EvalEnv<Rat> env{s.order, {}};
        QExpR h = build_series<Rat>(name, power, env);
        std::cout << (s.as_json ? to_json(h).dump() : to_display(h)) << "\n";
    } else {
        expr::EvalEnv<BigComplex> env{s.order, {static_cast<mpfr_prec_t>(s.precision)}};
        QExpC h = build_series<BigComplex>(name, power, env);
        std::cout << (s.as_json ? to_json(h).dump() : to_display(h)) << "\n";
    }
    return 0;
}

int cmd_schwarzian(const Shared& s, const std::string& name, const std::string& power) {
    if (s.backend == "rational") {
        expr::EvalEnv<Rat> env{s.order + 4, {}};
        auto S = schwarz::schwarzian_norm(build_series<Rat>(name, power, env));
        S = truncate_q(S, Rat(s.order));
        std::cout << (s.as_json ? to_json(S).dump() : to_display(S)) << "\n";
    } else {
        expr::EvalEnv<BigComplex> env{s.order + 4, {static_cast<mpfr_prec_t>(s.precision)}};
        auto S = schwarz::schwarzian_norm(build_series<BigComplex>(name, power, env));
        S = truncate_q(S, Rat(s.order));
        std::cout << (s.as_json ? to_json(S).dump() : to_display(S)) << "\n";
    }
    return 0;
}

int cmd_fit(const Shared& s, const std::string& name, const std::string& power) {
    if (s.backend == "rational") {
        expr::EvalEnv<Rat> env{s.order + 4, {}};
        auto fit = schwarz::fit_weight4(schwarz::schwarzian_norm(build_series<Rat>(name, power, env)),
                                        s.order);
        if (s.as_json) {
            std::cout << to_json(fit).dump() << "\n";
        } else {
            std::cout << "coeff_theta2_8 = " << rat_str(fit.coeff_theta2_8)
                      << "\ncoeff_phi4     = " << rat_str(fit.coeff_phi4) << "\nresidual_ok    = "
                      << (fit.residual_ok ? "true" : "false") << " (order " << fit.checked_order
                      << ")\n";
            if (fit.squares)
                std::cout << "squares        = (" << rat_str(fit.squares->first) << ")^2, ("
                          << rat_str(fit.squares->second) << ")^2\n";
        }
        return fit.residual_ok ? 0 : 1;
    }
    expr::EvalEnv<BigComplex> env{s.order + 4, {static_cast<mpfr_prec_t>(s.precision)}};
    eq_options<BigComplex> opts{BigFloat::pow2(-s.precision / 2, s.precision)};
    auto fit = schwarz::fit_weight4(
        schwarz::schwarzian_norm(build_series<BigComplex>(name, power, env)), s.order, opts);
    if (s.as_json)
        std::cout << to_json(fit).dump() << "\n";
    else
        std::cout << "coeff_theta2_8 = " << fit.coeff_theta2_8.str() << "\ncoeff_phi4     = "
                  << fit.coeff_phi4.str() << "\nresidual_ok    = "
                  << (fit.residual_ok ? "true" : "false") << " (order " << fit.checked_order
                  << ", max_abs_err " << fit.max_abs_err << ")\n";
    return fit.residual_ok ? 0 : 1;
}

struct CoeffArgs {
    std::string a, b;  // normalized coefficient values a/(2 pi^2), b/(2 pi^2)
    long n1 = 0, m1 = 0, n2 = 0, m2 = 0;  // sugar: a = (n1/m1)^2, b = (n2/m2)^2

    std::pair<Rat, Rat> resolve() const {
        if (!a.empty() || !b.empty()) {
            if (a.empty() || b.empty())
                throw series_error("both --a and --b are required when giving coefficient values");
            return {parse_rat(a), parse_rat(b)};
        }
        if (n1 > 0 && m1 > 0 && n2 > 0 && m2 > 0)
            return {rat_of(n1 * n1, m1 * m1), rat_of(n2 * n2, m2 * m2)};
        throw series_error("give either --a/--b or all of --n1 --m1 --n2 --m2");
    }
};

void add_coeff_args(CLI::App* cmd, CoeffArgs& c) {
    cmd->add_option("--a", c.a, "coefficient of theta2^8, normalized by 2 pi^2 (e.g. 1/9)");
    cmd->add_option("--b", c.b, "coefficient of (theta3 theta4)^4, normalized by 2 pi^2");
    cmd->add_option("--n1", c.n1, "sugar: a = (n1/m1)^2");
    cmd->add_option("--m1", c.m1, "sugar: a = (n1/m1)^2");
    cmd->add_option("--n2", c.n2, "sugar: b = (n2/m2)^2");
    cmd->add_option("--m2", c.m2, "sugar: b = (n2/m2)^2");
}

int cmd_frobenius(const Shared& s, const CoeffArgs& args) {
    auto [a, b] = args.resolve();
    const long work = std::max(s.order, 8L) + 6;
    QExpR S = frobenius::weight4_series(a, b, work);
    auto target = frobenius::make_target(S);
    auto sol = frobenius::solve_h(target, work);
    QExpR back = schwarz::schwarzian_norm(sol.h);
    auto round = eq_to_order(back, S, Rat(s.order));
    json out{{"r", rat_str(target.r)},
             {"logarithmic", sol.logarithmic},
             {"log_coeff", rat_str(sol.h.log_coeff())},
             {"roundtrip_ok", round.equal},
             {"order", s.order},
             {"y1", to_json(truncate_q(sol.y1, Rat(std::min(s.order, 10L) )))},
             {"h_leading", sol.h.body().is_zero()
                               ? json(nullptr)
                               : json{{"exponent", rat_str(sol.h.body().lead_exp())},
                                      {"coefficient", rat_str(sol.h.body().coeff_at(0))}}}};
    if (s.as_json) {
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "indicial exponent r = " << rat_str(target.r) << "\n";
        if (sol.logarithmic)
            std::cout << "h = " << rat_str(sol.h.log_coeff()) << " log q + ("
                      << to_display(truncate_q(sol.h.body(), sol.h.body().lead_exp() + Rat(3)))
                      << ")\n";
        else
            std::cout << "h = " << to_display(truncate_q(sol.h.body(), sol.h.body().lead_exp() + Rat(3)))
                      << "\n";
        std::cout << "logarithmic = " << (sol.logarithmic ? "true" : "false")
                  << "\nround trip {h}/2pi^2 == S to order " << s.order << ": "
                  << (round.equal ? "ok" : "MISMATCH") << "\n";
    }
    return round.equal ? 0 : 1;
}

int cmd_classify(const Shared& s, const CoeffArgs& args) {
    auto [a, b] = args.resolve();
    auto res = groups::classify_coeffs(a, b);
    if (s.as_json) {
        std::cout << to_json(res).dump() << "\n";
        return 0;
    }
    if (!res.exists) {
        std::cout << "no modular solution: " << res.rationale << "\n";
        return 0;
    }
    std::cout << "modular solution exists [" << res.case_tag << "]\n";
    if (res.group) std::cout << "group   = " << res.group->label() << " (order " << res.group->order() << ")\n";
    if (res.gamma_level) std::cout << "group   = Gamma(" << *res.gamma_level << ")\n";
    if (res.kernel) {
        std::cout << "kernel  = " << res.kernel->name << "\n          (a,b)-words:";
        for (const auto& w : res.kernel->words_ab) std::cout << " " << w << ";";
        std::cout << "\n";
    }
    if (res.cusp_widths)
        std::cout << "widths  = (" << res.cusp_widths->first << ", " << res.cusp_widths->second
                  << ")\n";
    if (res.genus_value) std::cout << "genus   = " << rat_str(*res.genus_value) << "\n";
    if (res.degree) std::cout << "degree  = " << *res.degree << "\n";
    std::cout << "why     : " << res.rationale << "\n";
    return 0;
}

int cmd_table(bool as_json) {
    auto rows = groups::summary_table();
    if (as_json) {
        json out = json::array();
        for (const auto& r : rows)
            out.push_back(json{{"group", r.group}, {"kernel", r.kernel}, {"widths", r.widths}, {"genus", r.genus}});
        std::cout << out.dump() << "\n";
        return 0;
    }
    std::size_t wg = 0, wk = 0, ww = 0;
    for (const auto& r : rows) {
        wg = std::max(wg, r.group.size());
        wk = std::max(wk, r.kernel.size());
        ww = std::max(ww, r.widths.size());
    }
    for (const auto& r : rows) {
        std::cout << r.group << std::string(wg - r.group.size() + 2, ' ') << r.kernel
                  << std::string(wk - r.kernel.size() + 2, ' ') << r.widths
                  << std::string(ww - r.widths.size() + 2, ' ') << r.genus << "\n";
    }
    return 0;
}

int cmd_cosets(const std::string& relators, long max_cosets, bool as_json) {
    auto p = groups::parse_presentation(relators);
    long order = groups::coset_enumerate(p, max_cosets);
    if (as_json)
        std::cout << json{{"order", order}, {"relators", relators}}.dump() << "\n";
    else
        std::cout << "group order = " << order << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, long order, unsigned jobs, bool as_json) {
    auto recs = verify::catalog();
    std::vector<verify::IdentityRecord> selected;
    if (suite == "all") {
        selected = recs;
    } else {
        selected.push_back(verify::find_record(recs, suite));
    }
    auto verdicts = verify::run_suite(selected, order, jobs);
    bool all_pass = true;
    json out = json::array();
    for (const auto& v : verdicts) {
        all_pass = all_pass && v.status == verify::Status::pass;
        if (as_json) {
            out.push_back(to_json(v));
            continue;
        }
        std::cout << verify::status_name(v.status) << "  " << v.id << " (order " << v.order << ")";
        if (v.status == verify::Status::skipped) std::cout << " -- " << v.skip_reason;
        if (v.first_mismatch)
            std::cout << " -- " << v.first_mismatch->where << ": " << v.first_mismatch->lhs
                      << " != " << v.first_mismatch->rhs
                      << (v.first_mismatch->exponent
                              ? " at q^" + rat_str(*v.first_mismatch->exponent)
                              : "");
        std::cout << "\n";
        for (const auto& w : v.warnings) std::cout << "    note: " << w << "\n";
    }
    if (as_json) std::cout << out.dump() << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification kernel for level-2 modular Schwarzian equations"};
    app.require_subcommand(1);

    Shared s_expand, s_schwarz, s_fit, s_frob, s_classify;
    std::string expand_name, expand_power;
    std::string schwarz_name, schwarz_power;
    std::string fit_name, fit_power;
    CoeffArgs frob_args, classify_args;
    bool table_json = false, cosets_json = false;
    std::string cosets_relators;
    long cosets_max = 1000000;
    std::string verify_suite = "all";
    long verify_order = 0;
    unsigned verify_jobs = 0;
    bool verify_json = false;

    auto* expand = app.add_subcommand("expand", "print the q-expansion of a named form");
    expand->add_option("form", expand_name, "form name (e.g. E4, lambda, t_haupt)")->required();
    expand->add_option("--power", expand_power, "apply a fractional power p/q (leading coefficient normalized)");
    add_shared(expand, s_expand);

    auto* schwarzian = app.add_subcommand("schwarzian", "normalized Schwarzian {h, tau}/(2 pi^2)");
    schwarzian->add_option("form", schwarz_name, "form name")->required();
    schwarzian->add_option("--power", schwarz_power, "apply a fractional power first");
    add_shared(schwarzian, s_schwarz);

    auto* fit = app.add_subcommand("fit", "decompose the Schwarzian in the basis {theta2^8, (theta3 theta4)^4}");
    fit->add_option("form", fit_name, "form name")->required();
    fit->add_option("--power", fit_power, "apply a fractional power first");
    add_shared(fit, s_fit);

    auto* frobenius = app.add_subcommand("frobenius", "series solution of y'' + (F/2) y = 0 at the cusp");
    add_coeff_args(frobenius, frob_args);
    add_shared(frobenius, s_frob, false);

    auto* classify = app.add_subcommand("classify", "decide whether modular solutions exist and on which group");
    add_coeff_args(classify, classify_args);
    add_shared(classify, s_classify, false);

    auto* table = app.add_subcommand("table", "summary table of admissible kernels, widths and genera");
    table->add_flag("--json", table_json, "emit JSON");

    auto* cosets = app.add_subcommand("cosets", "Todd-Coxeter coset enumeration of a finite presentation");
    cosets->add_option("--relators", cosets_relators, "comma-separated relators, e.g. \"b^2,a^3,(ba)^3\"")
        ->required();
    cosets->add_option("--max", cosets_max, "coset table budget")->check(CLI::PositiveNumber);
    cosets->add_flag("--json", cosets_json, "emit JSON");

    auto* verify = app.add_subcommand("verify", "run the identity catalog");
    verify->add_option("--suite", verify_suite, "all or a record id (e.g. lambda-schwarz)");
    verify->add_option("--order", verify_order, "override the per-record default order");
    verify->add_option("--jobs", verify_jobs, "worker threads (default: hardware parallelism)");
    verify->add_flag("--json", verify_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (expand->parsed()) return cmd_expand(s_expand, expand_name, expand_power);
        if (schwarzian->parsed()) return cmd_schwarzian(s_schwarz, schwarz_name, schwarz_power);
        if (fit->parsed()) return cmd_fit(s_fit, fit_name, fit_power);
        if (frobenius->parsed()) return cmd_frobenius(s_frob, frob_args);
        if (classify->parsed()) return cmd_classify(s_classify, classify_args);
        if (table->parsed()) return cmd_table(table_json);
        if (cosets->parsed()) return cmd_cosets(cosets_relators, cosets_max, cosets_json);
        if (verify->parsed()) return cmd_verify(verify_suite, verify_order, verify_jobs, verify_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
