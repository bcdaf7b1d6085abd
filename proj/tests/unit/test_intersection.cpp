#include <doctest.h>

#include "hyperbound/intersection.hpp"
#include "oracles.hpp"

using namespace hyperbound;

namespace {

Parameters params_of(int n, std::vector<long> a, Rational delta = 0) {
    std::vector<Integer> w(a.begin(), a.end());
    return Parameters(n, static_cast<int>(a.size()), WeightVector(std::move(w)), std::move(delta));
}

}  // namespace

TEST_CASE("polynomial conventions") {
    const auto p = IntersectionPolynomial::from_conventional(2, {24, 576, 3072});
    CHECK(p.raw(0) == 24);
    CHECK(p.raw(1) == -576);
    CHECK(p.conventional(2) == 3072);
    CHECK(p.eval(10) == 2400 - 5760 - 3072);
    CHECK(p.eval(Rational(1, 2)) == oracle::horner_desc(p.raw(), Rational(1, 2)));
    CHECK_THROWS_AS(p.raw(3), std::out_of_range);
    CHECK_THROWS_AS(IntersectionPolynomial(2, {1, 2}), std::invalid_argument);
}

TEST_CASE("leading coefficient for n = kappa = 2, a = (2, 1)") {
    // Hand expansion: c_0 = 24 from B = C = 1 plus 10 from the C term t_1^2 t_2^-2.
    const auto I = compute_I(params_of(2, {2, 1}));
    CHECK(I.raw(0) == 34);
    CHECK(I == compute_I_by_direct_product(params_of(2, {2, 1})));
}

TEST_CASE("Cauchy route equals the direct triple product") {
    const std::vector<Parameters> ps{
        params_of(2, {3, 1}),
        params_of(2, {4, 1}, Rational(1, 140)),
        params_of(2, {5, 2}, Rational(1, 3)),
        params_of(2, {9, 3, 1}),
        params_of(2, {7, 4, 1}, Rational(1, 2)),
        params_of(3, {9, 3, 1}, Rational(1, 945)),
        params_of(1, {2}),
        params_of(1, {5, 1}, Rational(1, 7)),
    };
    for (const auto& p : ps) {
        CAPTURE(p.n());
        CAPTURE(p.kappa());
        CHECK(compute_I(p) == compute_I_by_direct_product(p));
    }
}

TEST_CASE("table and on-demand coefficient paths agree") {
    const std::vector<Parameters> ps{params_of(3, {9, 3, 1}, Rational(1, 945)), params_of(2, {9, 3, 1}, Rational(1, 5)),
                                     params_of(3, {11, 4, 2, 1})};
    for (const auto& p : ps) {
        ComputeOptions table, closed;
        table.expansion_threshold = 1L << 30;
        closed.expansion_threshold = 0;
        CHECK(compute_I(p, table) == compute_I(p, closed));
    }
}

TEST_CASE("wider windows do not change the result") {
    const auto p = params_of(3, {9, 3, 1}, Rational(1, 945));
    const long lo = p.n() - p.n_kappa() - 1;
    ComputeOptions wide;
    wide.t_windows = std::vector<Window>(3, Window{lo - 2, 2 * p.n() + 3});
    CHECK(compute_I(p, wide) == compute_I(p));
    ComputeOptions narrow;
    narrow.t_windows = std::vector<Window>(3, Window{lo + 1, 2 * p.n()});
    CHECK_THROWS_AS(compute_I(p, narrow), std::invalid_argument);
    ComputeOptions wrong_len;
    wrong_len.t_windows = std::vector<Window>(2, Window{lo, 2 * p.n()});
    CHECK_THROWS_AS(compute_I(p, wrong_len), std::invalid_argument);
}

TEST_CASE("B = C = 1 and delta = 0 weights the simplified coefficients by alpha") {
    oracle::Gen g(3);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = static_cast<int>(g.integer(1, 3));
        const int kappa = static_cast<int>(g.integer(n, 4));
        const auto a = g.weights(static_cast<std::size_t>(kappa), 5);
        const Parameters p(n, kappa, WeightVector(a), 0);
        ComputeOptions unit;
        unit.unit_B = unit.unit_C = true;
        const auto I = compute_I(p, unit);
        const auto T = compute_I_tilde(p);
        for (int q = 0; q <= n; ++q) {
            CHECK(I.raw(q) == Rational(1 - q) / Rational(oracle::brute_factorial(q)) * T.conventional(q));
        }
    }
}

TEST_CASE("closed-form simplified polynomial") {
    const auto T = compute_I_tilde(params_of(2, {2, 1}));
    CHECK(T == IntersectionPolynomial::from_conventional(2, {24, 576, 3072}));
    oracle::Gen g(4);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = static_cast<int>(g.integer(1, 3));
        const int kappa = static_cast<int>(g.integer(n, 4));
        const Parameters p(n, kappa, WeightVector(g.weights(static_cast<std::size_t>(kappa), 6)), 0);
        const auto t = compute_I_tilde(p);
        for (int q = 0; q <= n; ++q) CHECK(t.conventional(q) == compute_I_tilde_direct(p, q));
    }
    CHECK_THROWS_AS(compute_I_tilde_direct(params_of(2, {2, 1}), 3), std::out_of_range);
    CHECK_THROWS_AS(compute_I_tilde(params_of(3, {2, 1})), std::invalid_argument);
}

TEST_CASE("leading coefficient decomposition") {
    const std::vector<Parameters> ps{params_of(2, {3, 1}), params_of(3, {9, 3, 1}, Rational(1, 945)),
                                     params_of(3, {10, 3, 1}, Rational(1, 10))};
    for (const auto& p : ps) {
        const auto D = decompose_I0(p);
        CHECK(D.plus >= 0);
        CHECK(D.minus >= 0);
        CHECK(D.leading(p.delta()) == compute_I(p).raw(0));
        // The slope is the exact d-independent derivative in delta.
        const Rational d2 = p.delta() + Rational(1, 3);
        CHECK(D.leading(d2) == compute_I(p.with_delta(d2)).raw(0));
    }
    CHECK_THROWS_AS(decompose_I0(params_of(2, {3, 2, 1})), std::invalid_argument);
}

TEST_CASE("budget gate") {
    const auto p = Parameters::geometric(3, 3, 0);
    ComputeOptions tiny;
    tiny.budget = 10;
    CHECK(estimate_work(p) > 10);
    CHECK_THROWS_AS(compute_I(p, tiny), BudgetExceeded);
    try {
        compute_I(p, tiny);
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == estimate_work(p));
        CHECK(e.budget() == 10);
    }
    CHECK_THROWS_AS(decompose_I0(p, 1), BudgetExceeded);
    CHECK(estimate_work(Parameters::geometric(5, 5, 0)) > estimate_work(Parameters::geometric(4, 4, 0)));
    CHECK_THROWS_AS(compute_I(params_of(3, {2, 1})), std::invalid_argument);
}

TEST_CASE("sufficient prefix caps never exceed the default windows") {
    for (int n = 1; n <= 4; ++n) {
        const auto p = Parameters::geometric(n, n, 0);
        const auto caps = sufficient_prefix_caps(p, n);
        const auto policy = default_C_policy(p);
        const auto from_windows = prefix_caps_from_windows(policy.windows());
        REQUIRE(caps.size() == from_windows.size());
        for (std::size_t i = 0; i < caps.size(); ++i) CHECK(caps[i] <= from_windows[i]);
    }
}
