// Acceptance suite: every criterion prints one [PASS]/[FAIL] line; the
// process exits nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>

#include "helpers.hpp"
#include "msk/frobenius.hpp"
#include "msk/groups.hpp"
#include "msk/verify.hpp"

using namespace msk;
using verify::Status;

namespace {

int failures = 0;

void criterion(int k, const std::string& what, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << k << ": " << what << " ("
              << secs << "s)" << (detail.empty() ? "" : " -- " + detail) << "\n";
    if (!ok) ++failures;
}

bool run_records(const std::vector<std::string>& ids, long order, std::string& detail,
                 double* max_err = nullptr) {
    auto recs = verify::catalog();
    for (const auto& id : ids) {
        auto v = verify::run_identity(verify::find_record(recs, id), order);
        if (max_err) *max_err = std::max(*max_err, v.max_abs_err);
        if (v.status != Status::pass) {
            detail = id + " " + verify::status_name(v.status) +
                     (v.skip_reason.empty() ? "" : ": " + v.skip_reason) +
                     (v.first_mismatch ? ": " + v.first_mismatch->where : "");
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "exact identity suite at order 50, rational backend, zero tolerance",
              [](std::string& detail) {
                  return run_records({"theta-jacobi", "e4-theta", "lambda-schwarz", "t-schwarz",
                                      "dihedral-pow", "dihedral-2tau", "omega2-lambda",
                                      "hyperelliptic", "gamma04-haupt", "schwarz-power-rule"},
                                     50, detail);
              });

    criterion(2, "tetrahedral table: fits, orientations, degrees at order 30",
              [](std::string& detail) {
                  auto recs = verify::catalog();
                  auto v = verify::run_identity(verify::find_record(recs, "tetra-table"), 30);
                  if (v.status != Status::pass) {
                      detail = v.skip_reason;
                      if (v.first_mismatch) detail += " " + v.first_mismatch->where;
                      return false;
                  }
                  if (v.notes.size() != 5) {
                      detail = "expected 5 orientation reports, saw " + std::to_string(v.notes.size());
                      return false;
                  }
                  // degree column independently: d = 2(n1+n2) - 3 and max(deg P, deg Q)
                  for (auto [n1, n2, d] : {std::tuple<long, long, long>{1, 2, 3},
                                           {1, 4, 7},
                                           {5, 1, 9},
                                           {1, 5, 9},
                                           {5, 2, 11}}) {
                      if (groups::covering_degree(Rat(0), 12, 3, 6, n1, n2) != d) {
                          detail = "degree mismatch";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(3, "dihedral suite: power family, 2tau family, table rows and degree formula",
              [](std::string& detail) {
                  if (!run_records({"dihedral-pow", "dihedral-2tau", "dihedral-table"}, 50, detail))
                      return false;
                  // d = (n/2)(n1 - 1) + n2 against the tabulated rows
                  for (auto [n, n1, n2, d] : {std::tuple<long, long, long, long>{2, 3, 1, 3},
                                              {3, 3, 1, 4},
                                              {3, 1, 2, 2},
                                              {4, 1, 3, 3},
                                              {5, 1, 2, 2}}) {
                      Rat g = groups::genus(2 * n, 2, 2 * n);
                      const Rat closed_form = rat_of(n * (n1 - 1), 2) + n2;  // (n/2)(n1-1) + n2
                      if (closed_form != Rat(d) ||
                          groups::covering_degree(g, 2 * n, 2, 2 * n, n1, n2) != d) {
                          detail = "dihedral degree mismatch at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(4, "octahedral record at 256-bit precision, order 30, residual < 1e-40",
              [](std::string& detail) {
                  double max_err = 0.0;
                  if (!run_records({"octa-schwarz"}, 30, detail, &max_err)) return false;
                  if (!(max_err < 1e-40)) {
                      detail = "residual " + std::to_string(max_err);
                      return false;
                  }
                  detail = "max residual " + std::to_string(max_err);
                  return true;
              });

    criterion(5, "Frobenius round trips exact at order 40, with the logarithmic dichotomy",
              [](std::string& detail) {
                  if (!run_records({"frobenius-roundtrip"}, 40, detail)) return false;
                  // classify rejects (1,1) while the solver reports the log branch
                  auto res = groups::classify(groups::ClassificationInput(1, 1, 1, 1));
                  if (res.exists) {
                      detail = "equal-coefficient m=1 case must be rejected";
                      return false;
                  }
                  auto S = frobenius::weight4_series(Rat(1), Rat(1), 30);
                  auto sol = frobenius::solve_h(frobenius::make_target(S), 30);
                  if (!sol.logarithmic) {
                      detail = "integer indicial exponent must raise the logarithmic flag";
                      return false;
                  }
                  return true;
              });

    criterion(6, "group layer: enumerations, genus table, summary table", [](std::string& detail) {
        using namespace groups;
        auto enumerate_kernel = [](const GroupId& g) {
            Presentation p;
            p.gens = {"a", "b"};
            p.relators = kernel_descriptor(g).relators_ab;
            return coset_enumerate(p, 1000000);
        };
        std::vector<GroupId> ids = {{Family::A4, 0, Variant::primary},
                                    {Family::S4, 0, Variant::primary},
                                    {Family::S4, 0, Variant::fricke},
                                    {Family::A5, 0, Variant::primary},
                                    {Family::A5, 0, Variant::fricke}};
        for (long n = 1; n <= 12; ++n) {
            ids.push_back({Family::D2n, n, Variant::primary});
            ids.push_back({Family::D2n, n, Variant::fricke});
        }
        for (long n = 1; n <= 8; ++n) {
            ids.push_back({Family::C2n, n, Variant::primary});
            if (n % 2 == 1) ids.push_back({Family::C2n, n, Variant::fricke});
        }
        for (const auto& g : ids) {
            if (enumerate_kernel(g) != g.order()) {
                detail = "order mismatch for " + g.label();
                return false;
            }
        }
        // genus column of the summary table, for every row family with n <= 12
        std::vector<GroupId> genus_ids = ids;
        for (long n = 9; n <= 12; ++n) {
            genus_ids.push_back({Family::C2n, n, Variant::primary});
            if (n % 2 == 1) genus_ids.push_back({Family::C2n, n, Variant::fricke});
        }
        for (const auto& g : genus_ids) {
            auto kd = kernel_descriptor(g);
            Rat gen = genus(g.order(), kd.m1, kd.m2);
            Rat expect;
            if (g.family == Family::C2n)
                expect = g.n % 2 == 0 ? rat_of(g.n, 2) : rat_of(g.n - 1, 2);
            if (gen != expect) {
                detail = "genus mismatch for " + g.label();
                return false;
            }
        }
        auto rows = summary_table();
        const std::vector<std::tuple<std::string, std::string, std::string>> expected = {
            {"A4", "(3, 6)", "0"},          {"S4", "(4, 6)", "0"},
            {"S4", "(3, 8)", "0"},          {"A5", "(5, 6)", "0"},
            {"A5", "(3, 10)", "0"},         {"D2n for n >= 1", "(n, 4)", "0"},
            {"D2n for n >= 1", "(2, 2n)", "0"}, {"C2n for n even", "(2n, 4n)", "n/2"},
            {"C2n for n odd", "(n, 4n)", "(n-1)/2"}, {"C2n for n odd", "(2n, 2n)", "(n-1)/2"}};
        if (rows.size() != expected.size()) {
            detail = "summary table row count";
            return false;
        }
        for (const auto& [g, w, gen] : expected) {
            bool found = false;
            for (const auto& r : rows)
                found = found || (r.group == g && r.widths == w && r.genus == gen);
            if (!found) {
                detail = "missing summary row " + g + " " + w;
                return false;
            }
        }
        return true;
    });

    criterion(7, "classifier goldens", [](std::string& detail) {
        using namespace groups;
        auto is = [&](long n1, long m1, long n2, long m2, Family fam) {
            auto r = classify(ClassificationInput(n1, m1, n2, m2));
            return r.exists && r.group && r.group->family == fam;
        };
        bool ok = is(1, 3, 1, 6, Family::A4) && is(1, 4, 1, 6, Family::S4) &&
                  is(1, 3, 1, 8, Family::S4) && is(1, 5, 1, 6, Family::A5) &&
                  is(1, 3, 1, 10, Family::A5);
        // dihedral pairs with a != b (n2 coprime to m2, off the equal diagonal)
        for (long n = 1; n <= 12 && ok; ++n)
            ok = is(1, n, 3, 4, Family::D2n) &&
                 is(1, 2, n == 1 ? 3 : 2 * n - 1, 2 * n, Family::D2n);
        if (!ok) {
            detail = "admissible width pair not accepted";
            return false;
        }
        if (classify(ClassificationInput(1, 7, 1, 6)).exists ||
            classify(ClassificationInput(1, 5, 3, 5)).exists) {
            detail = "inadmissible width pair accepted";
            return false;
        }
        for (long m = 2; m <= 5; ++m) {
            auto r = classify(ClassificationInput(1, m, 1, m));
            if (!r.exists || r.gamma_level != m) {
                detail = "equal-coefficient case m=" + std::to_string(m);
                return false;
            }
        }
        if (classify(ClassificationInput(1, 6, 1, 6)).exists) {
            detail = "m=6 equal case accepted";
            return false;
        }
        auto za = classify(ClassificationInput::zero_a(1, 2));
        auto zb = classify(ClassificationInput::zero_b(1, 2));
        if (za.exists || zb.exists || za.rationale.find("vanishes") == std::string::npos) {
            detail = "zero coefficient must be rejected citing cusp vanishing";
            return false;
        }
        return true;
    });

    criterion(8, "property suites: ring axioms, derivation, Mobius invariance, cocycle, "
                 "half-integer cancellation",
              [](std::string& detail) {
                  test::SeriesGen gen(20250809);
                  for (int i = 0; i < 30; ++i) {
                      auto a = gen.series(), b = gen.series(), c = gen.series();
                      if (!test::series_equal((a + b) + c, a + (b + c)) ||
                          !test::series_equal(a * (b + c), a * b + a * c) ||
                          !test::series_equal(a * b, b * a)) {
                          detail = "ring axiom failed";
                          return false;
                      }
                      if (!test::series_equal(theta_derivative(a * b),
                                              a * theta_derivative(b) + b * theta_derivative(a))) {
                          detail = "derivation rule failed";
                          return false;
                      }
                  }
                  int done = 0;
                  while (done < 30) {
                      auto h = gen.series(16);
                      if (h.is_zero() || h.lead_exp() == Rat(0)) continue;
                      Rat a = gen.small_rat(true), b = gen.small_rat(), c = gen.small_rat(),
                          d = gen.small_rat(true);
                      if (sgn(a * d - b * c) == 0) continue;
                      QExpR lhs, rhs;
                      try {
                          lhs = schwarz::schwarzian_norm(schwarz::mobius_apply(h, {a, b, c, d}));
                          rhs = schwarz::schwarzian_norm(h);
                      } catch (const series_error&) {
                          continue;
                      }
                      if (!eq_to_order(lhs, rhs, std::min(lhs.order_q(), rhs.order_q())).equal) {
                          detail = "Mobius invariance failed";
                          return false;
                      }
                      for (long k : {2L, 3L}) {
                          auto l2 = schwarz::schwarzian_norm(substitute_power(h, k));
                          auto r2 = mul_rat(substitute_power(schwarz::schwarzian_norm(h), k),
                                            Rat(k * k));
                          if (!eq_to_order(l2, r2, std::min(l2.order_q(), r2.order_q())).equal) {
                              detail = "cocycle consistency failed";
                              return false;
                          }
                      }
                      ++done;
                  }
                  for (long n : {2L, 3L, 5L}) {
                      auto x = frac_power(forms::form_rational(forms::FormName::one_minus_lambda, 30),
                                          rat_of(1, n), false);
                      auto S = schwarz::schwarzian_norm(x.series);
                      if (S.branch_den() != 1) {
                          detail = "half-integer coefficients failed to cancel for n=" +
                                   std::to_string(n);
                          return false;
                      }
                  }
                  return true;
              });

    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}
