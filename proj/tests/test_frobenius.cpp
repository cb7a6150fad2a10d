#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "msk/frobenius.hpp"

using namespace msk;
using namespace msk::frobenius;
using forms::FormName;
using test::series_equal;

namespace {

// Test-side oracle: the second Frobenius solution from the minus-root
// recurrence n (n - r) b_n = sum (S_j / 4) b_(n-j), valid when r is not an
// integer. Kept independent of the library path it cross-checks.
QExpR solve_y2_oracle(const FrobeniusTarget& t, long order) {
    const long n_known = std::min<long>(order, rat_floor_scaled(t.S.order_q(), 1));
    std::vector<Rat> b(static_cast<std::size_t>(n_known), Rat(0));
    b[0] = 1;
    for (long n = 1; n < n_known; ++n) {
        Rat acc(0);
        for (long j = 1; j <= n; ++j) acc += t.S.coeff(Rat(j)) * b[static_cast<std::size_t>(n - j)] / 4;
        b[static_cast<std::size_t>(n)] = acc / (Rat(n) * (Rat(n) - t.r));
    }
    const long den = 2 * rat_den_long(t.r);
    std::vector<Rat> spread(static_cast<std::size_t>((n_known - 1) * den + 1), Rat(0));
    for (long n = 0; n < n_known; ++n) spread[static_cast<std::size_t>(n * den)] = b[static_cast<std::size_t>(n)];
    return QExpR::from_coeffs(static_cast<int>(den), -rat_num_long(t.r), std::move(spread),
                              -rat_num_long(t.r) + n_known * den);
}

}  // namespace

TEST_CASE("indicial exponent") {
    auto S = weight4_series(rat_of(1, 36), rat_of(1, 9), 20);
    CHECK(indicial(S) == rat_of(1, 3));
    CHECK(indicial(mul_rat(forms::form_rational(FormName::E4, 20), rat_of(1, 4))) == rat_of(1, 2));
    CHECK_THROWS_WITH(indicial(forms::form_rational(FormName::theta2_8, 20)),
                      Catch::Matchers::ContainsSubstring("vanishes at the cusp"));
    CHECK_THROWS_WITH(indicial(weight4_series(Rat(1), Rat(2), 20)),
                      Catch::Matchers::ContainsSubstring("not the square"));
}

TEST_CASE("solve_y1 basics") {
    // constant coefficient: y1 = q^(r/2) exactly
    for (Rat r : {rat_of(1, 3), rat_of(2, 5), Rat(2)}) {
        FrobeniusTarget t(QExpR::constant_rat(r * r, 30), r);
        auto y1 = solve_y1(t, 25);
        CHECK(series_equal(y1, QExpR::q_power(r / 2, 25)));
    }
    // S = 0: y'' = 0, y1 = 1
    FrobeniusTarget t0(QExpR::zero(30), Rat(0));
    CHECK(series_equal(solve_y1(t0, 25), QExpR::constant_rat(Rat(1), 25)));
}

TEST_CASE("solve_y1 against the lambda solution") {
    // For S = E4/4 the equation is solved by functions of lambda:
    // y = lambda / sqrt(D lambda) up to a constant, so lambda^2 / D lambda
    // must equal a constant times y1^2.
    long N = 30;
    auto S = mul_rat(forms::form_rational(FormName::E4, N), rat_of(1, 4));
    auto target = make_target(S);
    CHECK(target.r == rat_of(1, 2));
    auto y1 = solve_y1(target, N - 2);
    CHECK(y1.coeff(rat_of(1, 4)) == 1);
    CHECK(y1.coeff(rat_of(5, 4)) == 10);  // first recurrence step: (60/4)/(3/2)
    auto lam = forms::form_rational(FormName::lambda, N);
    auto ratio = (pow_int(lam, 2) / theta_derivative(lam)) / pow_int(y1, 2);
    CHECK(ratio.lead_exp() == Rat(0));
    CHECK(ratio.size() == 1);
    CHECK(ratio.coeff(Rat(0)) == 32);
}

TEST_CASE("ode check on random targets") {
    std::mt19937_64 rng(97);
    std::uniform_int_distribution<long> pick_n(1, 12), pick_b(1, 9);
    int done = 0;
    while (done < 20) {
        long n = pick_n(rng), m = pick_n(rng);
        if (std::gcd(n, m) != 1) continue;
        Rat r = rat_of(n, m);
        auto S = weight4_series(rat_of(pick_b(rng), pick_b(rng)), r * r, 30);
        FrobeniusTarget t(S, r);
        auto y1 = solve_y1(t, 26);
        auto lhs = theta_derivative(theta_derivative(y1)) - mul_rat(S * y1, rat_of(1, 4));
        Rat M = lhs.order_q();
        CHECK(eq_to_order(lhs, QExpR::zero(100), std::min(M, Rat(24))).equal);
        ++done;
    }
}

TEST_CASE("wronskian of the two solutions is constant") {
    for (auto [n, m] : {std::pair<long, long>{1, 3}, {2, 5}, {3, 4}}) {
        Rat r = rat_of(n, m);
        auto S = weight4_series(rat_of(1, 7), r * r, 30);
        FrobeniusTarget t(S, r);
        auto y1 = solve_y1(t, 26);
        auto y2 = solve_y2_oracle(t, 26);
        auto W = y1 * theta_derivative(y2) - y2 * theta_derivative(y1);
        auto dW = theta_derivative(W);
        CHECK(eq_to_order(dW, QExpR::zero(100), dW.order_q()).equal);
        CHECK(W.coeff(Rat(0)) == -r);
        CHECK(W.size() == 1);
    }
}

TEST_CASE("solve_h round trip and the logarithmic dichotomy") {
    // S = 0: h = log q, the pure logarithm
    FrobeniusTarget t0(QExpR::zero(30), Rat(0));
    auto sol0 = solve_h(t0, 25);
    CHECK(sol0.logarithmic);
    CHECK(sol0.h.log_coeff() == 1);
    CHECK(sol0.h.body().is_zero());

    // generic fractional exponent: h = q^(-r)(c + ...) with no log term
    auto S = weight4_series(rat_of(1, 36), rat_of(1, 9), 46);
    auto sol = solve_h(make_target(S), 46);
    CHECK_FALSE(sol.logarithmic);
    CHECK(sol.h.log_coeff() == 0);
    CHECK(sol.h.body().lead_exp() == rat_of(-1, 3));
    auto back = schwarz::schwarzian_norm(sol.h);
    CHECK(eq_to_order(back, S, Rat(40)).equal);
    // Mobius-related to the hauptmodul: same Schwarzian as t
    auto St = schwarz::schwarzian_norm(forms::form_rational(FormName::t_haupt, 44));
    CHECK(eq_to_order(St, S, Rat(40)).equal);

    // dichotomy sweep
    for (Rat r : {rat_of(1, 5), rat_of(1, 2), rat_of(2, 3), Rat(1), Rat(2), Rat(3)}) {
        auto Sr = weight4_series(rat_of(1, 4), r * r, 46);
        auto s = solve_h(FrobeniusTarget(Sr, r), 46);
        CHECK(s.logarithmic == rat_is_integer(r));
        auto rb = schwarz::schwarzian_norm(s.h);
        CHECK(eq_to_order(rb, Sr, Rat(40)).equal);
    }
}

TEST_CASE("target validation") {
    CHECK_THROWS_WITH(FrobeniusTarget(weight4_series(Rat(1), Rat(4), 20), Rat(1)),
                      Catch::Matchers::ContainsSubstring("indicial mismatch"));
    CHECK_THROWS_WITH(make_target(QExpR::q_power(Rat(-1), 20)),
                      Catch::Matchers::ContainsSubstring("not holomorphic"));
}
