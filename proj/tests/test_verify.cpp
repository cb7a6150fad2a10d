#include <catch2/catch_amalgamated.hpp>

#include "msk/serialize.hpp"
#include "msk/verify.hpp"

using namespace msk;
using namespace msk::verify;

TEST_CASE("catalog shape") {
    auto recs = catalog();
    CHECK(recs.size() >= 16);
    for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i - 1].id < recs[i].id);
    for (const auto& r : recs) {
        CHECK_FALSE(r.anchor.empty());
        CHECK_FALSE(r.checks.empty());
    }
    const auto& tetra = find_record(recs, "tetra-table");
    long fits = 0;
    for (const auto& c : tetra.checks)
        if (std::holds_alternative<FitEq>(c)) ++fits;
    CHECK(fits == 5);
    const auto& octa = find_record(recs, "octa-schwarz");
    CHECK(octa.complex_backend);
    CHECK(octa.precision == 256);
    CHECK_THROWS_AS(find_record(recs, "nope"), series_error);
}

TEST_CASE("single records pass at modest order") {
    auto recs = catalog();
    for (const char* id : {"theta-jacobi", "e4-theta", "lambda-schwarz", "omega2-lambda"}) {
        auto v = run_identity(find_record(recs, id), 20);
        INFO(id << ": " << v.skip_reason);
        CHECK(v.status == Status::pass);
        CHECK(v.order == 20);
    }
}

TEST_CASE("warnings are attached to verdicts") {
    auto recs = catalog();
    auto v = run_identity(find_record(recs, "omega2-lambda"), 16);
    REQUIRE(v.warnings.size() == 1);
    CHECK(v.warnings[0].find("sign") != std::string::npos);
    auto v2 = run_identity(find_record(recs, "schwarz-power-rule"), 16);
    CHECK_FALSE(v2.warnings.empty());
}

TEST_CASE("resource guard skips oversized requests") {
    auto recs = catalog();
    auto v = run_identity(find_record(recs, "e4-theta"), 1000000);
    CHECK(v.status == Status::skipped);
    CHECK(v.skip_reason.find("insufficient precision budget") != std::string::npos);
}

TEST_CASE("a failing identity reports the first mismatch") {
    using namespace expr::build;
    IdentityRecord bad;
    bad.id = "bad-e4-theta2_8";
    bad.anchor = "deliberately false";
    bad.default_order = 2;
    bad.checks.push_back(SeriesEq{"E4 = theta2^8", form(forms::FormName::E4),
                                  form(forms::FormName::theta2_8)});
    auto v = run_identity(bad, 2);
    CHECK(v.status == Status::fail);
    REQUIRE(v.first_mismatch);
    CHECK(*v.first_mismatch->exponent == Rat(0));
    CHECK(v.first_mismatch->lhs == "1");
    CHECK(v.first_mismatch->rhs == "0");
}

TEST_CASE("evaluation errors are reported as skipped") {
    using namespace expr::build;
    IdentityRecord r;
    r.id = "div-by-zero";
    r.anchor = "exercise the skip path";
    r.checks.push_back(SeriesEq{"1/0", div(num(Rat(1)), num(Rat(0))), num(Rat(1))});
    auto v = run_identity(r, 10);
    CHECK(v.status == Status::skipped);
    CHECK(v.skip_reason.find("zero") != std::string::npos);
}

TEST_CASE("verdict json schema") {
    auto recs = catalog();
    auto v = run_identity(find_record(recs, "theta-jacobi"), 12);
    auto j = to_json(v);
    CHECK(j.at("id") == "theta-jacobi");
    CHECK(j.at("status") == "pass");
    CHECK(j.at("order") == 12);
    CHECK(j.at("first_mismatch").is_null());
    CHECK(j.at("warnings").is_array());
}

TEST_CASE("fitted squares land in an admissible classification up to orientation") {
    // the tabulated tetrahedral rows: fit the Schwarzian, then feed the
    // recovered square roots to the classifier in both slot orientations;
    // exactly one of them must come back as the tetrahedral case
    const std::vector<std::pair<std::vector<long>, std::vector<long>>> rows = {
        {{0, 1}, {-2, 1, 0, 1}},
        {{0, -14, 0, 0, 14, 0, 0, 1}, {-2, 0, 0, 7}},
        {{0, 0, 0, 0, 0, 16, 0, 0, 1}, {-256, 0, 0, 384, 0, 0, 240, 0, 0, 5}},
    };
    auto t = forms::form_rational(forms::FormName::t_haupt, 40);
    for (const auto& [P, Q] : rows) {
        auto h = forms::rational_eval<Rat>(forms::rat_coeffs(P), forms::rat_coeffs(Q), t);
        auto fit = schwarz::fit_weight4(schwarz::schwarzian_norm(h), 30);
        REQUIRE(fit.residual_ok);
        REQUIRE(fit.squares);
        auto as_input = [](const Rat& ra, const Rat& rb) {
            return groups::ClassificationInput(rat_num_long(ra), rat_den_long(ra),
                                               rat_num_long(rb), rat_den_long(rb));
        };
        auto listed = groups::classify(as_input(fit.squares->first, fit.squares->second));
        auto swapped = groups::classify(as_input(fit.squares->second, fit.squares->first));
        const bool listed_a4 =
            listed.exists && listed.group && listed.group->family == groups::Family::A4;
        const bool swapped_a4 =
            swapped.exists && swapped.group && swapped.group->family == groups::Family::A4;
        CHECK(listed_a4 != swapped_a4);  // exactly one orientation is the tetrahedral case
    }
}

TEST_CASE("suite runner is deterministic across thread counts") {
    auto recs = catalog();
    std::vector<IdentityRecord> subset = {find_record(recs, "theta-jacobi"),
                                          find_record(recs, "e4-theta"),
                                          find_record(recs, "hyperelliptic"),
                                          find_record(recs, "schwarz-power-rule")};
    auto serial = run_suite(subset, 16, 1);
    auto parallel = run_suite(subset, 16, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].id == parallel[i].id);
        CHECK(serial[i].status == parallel[i].status);
    }
}
