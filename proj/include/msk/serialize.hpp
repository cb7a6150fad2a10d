#pragma once

#include <json.hpp>

#include "msk/groups.hpp"
#include "msk/schwarz.hpp"
#include "msk/verify.hpp"

namespace msk {

using nlohmann::json;

// QExp wire format:
//   {"branch_den": N, "lead_exp": e, "order": M, "backend": ..., "coeffs": [...]}
// with lead_exp and the relative order M in units of 1/N. Stored trailing
// zeros are omitted; slots past the coefficient list inside the window are
// zero. Rational coefficients are "p/q" strings; complex ones [re, im]
// string pairs carrying the full precision.
inline json to_json(const QExpR& a) {
    json coeffs = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) coeffs.push_back(rat_str(a.coeff_at(i)));
    const int den = a.branch_den();
    const long bound = rat_floor_scaled(a.order_q(), den);
    const long lead = a.is_zero() ? bound : rat_floor_scaled(a.lead_exp(), den);
    return json{{"branch_den", den},
                {"lead_exp", lead},
                {"order", bound - lead},
                {"backend", "rational"},
                {"coeffs", coeffs}};
}

inline json to_json(const QExpC& a, int digits = 0) {
    json coeffs = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const BigComplex& c = a.coeff_at(i);
        coeffs.push_back(json::array({c.real().str(digits), c.imag().str(digits)}));
    }
    const int den = a.branch_den();
    const long bound = rat_floor_scaled(a.order_q(), den);
    const long lead = a.is_zero() ? bound : rat_floor_scaled(a.lead_exp(), den);
    return json{{"branch_den", den},
                {"lead_exp", lead},
                {"order", bound - lead},
                {"backend", coeff_traits<BigComplex>::backend_name(a.context())},
                {"coeffs", coeffs}};
}

inline QExpR qexp_from_json(const json& j) {
    if (j.at("backend").get<std::string>() != "rational")
        throw series_error("qexp_from_json: only the rational backend deserializes");
    const int den = j.at("branch_den").get<int>();
    const long lead = j.at("lead_exp").get<long>();
    const long order = j.at("order").get<long>();
    std::vector<Rat> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rat(c.get<std::string>()));
    return QExpR::from_coeffs(den, lead, std::move(coeffs), lead + order);
}

inline json to_json(const schwarz::FitResult<Rat>& f) {
    json squares = nullptr;
    if (f.squares)
        squares = json{{"n1_over_m1", rat_str(f.squares->first)},
                       {"n2_over_m2", rat_str(f.squares->second)}};
    return json{{"coeff_theta2_8", rat_str(f.coeff_theta2_8)},
                {"coeff_phi4", rat_str(f.coeff_phi4)},
                {"squares", squares},
                {"residual_ok", f.residual_ok},
                {"order", f.checked_order}};
}

inline json to_json(const schwarz::FitResult<BigComplex>& f) {
    return json{{"coeff_theta2_8", f.coeff_theta2_8.str()},
                {"coeff_phi4", f.coeff_phi4.str()},
                {"squares", nullptr},
                {"residual_ok", f.residual_ok},
                {"order", f.checked_order},
                {"max_abs_err", f.max_abs_err}};
}

inline json to_json(const groups::KernelDescriptor& kd) {
    return json{{"name", kd.name},
                {"words_tr", kd.words_tr},
                {"words_ab", kd.words_ab},
                {"cusp_widths", json::array({kd.m1, kd.m2})}};
}

inline json to_json(const groups::ClassificationResult& r) {
    json out{{"exists", r.exists}, {"case", r.case_tag}, {"rationale", r.rationale}};
    if (r.group) {
        out["group"] = r.group->label();
        if (r.group->family == groups::Family::D2n || r.group->family == groups::Family::C2n)
            out["n"] = r.group->n;
        out["variant"] = r.group->variant == groups::Variant::primary ? "primary" : "fricke";
        out["group_order"] = r.group->order();
    }
    if (r.gamma_level) out["group"] = "Gamma(" + std::to_string(*r.gamma_level) + ")";
    if (r.kernel) out["kernel"] = to_json(*r.kernel);
    if (r.cusp_widths) out["cusp_widths"] = json::array({r.cusp_widths->first, r.cusp_widths->second});
    if (r.genus_value) out["genus"] = rat_str(*r.genus_value);
    if (r.degree) out["degree"] = *r.degree;
    return out;
}

inline json to_json(const verify::Verdict& v) {
    json mism = nullptr;
    if (v.first_mismatch)
        mism = json{{"where", v.first_mismatch->where},
                    {"exponent",
                     v.first_mismatch->exponent ? json(rat_str(*v.first_mismatch->exponent)) : json(nullptr)},
                    {"lhs", v.first_mismatch->lhs},
                    {"rhs", v.first_mismatch->rhs}};
    json out{{"id", v.id},
             {"status", verify::status_name(v.status)},
             {"order", v.order},
             {"first_mismatch", mism},
             {"warnings", v.warnings}};
    if (!v.notes.empty()) out["notes"] = v.notes;
    if (!v.skip_reason.empty()) out["skip_reason"] = v.skip_reason;
    if (v.max_abs_err > 0.0) out["max_abs_err"] = v.max_abs_err;
    return out;
}

// Plain-text rendering of a series, e.g. "1 + 240 q + 2160 q^2 + O(q^4)".
template <class C>
std::string to_display(const QExp<C>& a) {
    using traits = coeff_traits<C>;
    std::string out;
    auto exp_str = [](const Rat& e) -> std::string {
        if (e == Rat(1)) return "q";
        if (rat_is_integer(e)) return "q^" + rat_str(e);
        return "q^(" + rat_str(e) + ")";
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        const C& c = a.coeff_at(i);
        if (traits::is_zero(c)) continue;
        const Rat e = a.exp_at(i);
        std::string cs = traits::str(c);
        bool negative = false;
        if constexpr (std::is_same_v<C, Rat>) {
            if (sgn(c) < 0) {
                negative = true;
                cs = rat_str(-c);
            }
        }
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (sgn(e) == 0) {
            out += cs;
        } else if (cs == "1") {
            out += exp_str(e);
        } else {
            out += cs + " " + exp_str(e);
        }
    }
    if (out.empty()) out = "0";
    const Rat m = a.order_q();
    out += " + O(" + (rat_is_integer(m) ? "q^" + rat_str(m) : "q^(" + rat_str(m) + ")") + ")";
    return out;
}

}  // namespace msk
