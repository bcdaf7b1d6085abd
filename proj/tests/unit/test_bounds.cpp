#include <doctest.h>

#include "hyperbound/bounds.hpp"
#include "oracles.hpp"

using namespace hyperbound;

namespace {

Parameters params_of(int n, std::vector<long> a, Rational delta = 0) {
    std::vector<Integer> w(a.begin(), a.end());
    return Parameters(n, static_cast<int>(a.size()), WeightVector(std::move(w)), std::move(delta));
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("check statuses") {
    const auto ok = make_check("x", 1, Relation::le, 2, "1 <= 2");
    CHECK(ok.status == CheckStatus::pass);
    const auto bad = make_check("x", 3, Relation::le, 2, "3 <= 2");
    CHECK(bad.status == CheckStatus::fail);
    const auto unmet = make_check("x", 3, Relation::le, 2, "3 <= 2", "n >= 6");
    CHECK(unmet.status == CheckStatus::skipped);
    CHECK(unmet.lhs == Rational(3));
    CHECK(unmet.note.find("n >= 6") != std::string::npos);
    // A true relation passes whatever the precondition.
    CHECK(make_check("x", 1, Relation::le, 2, "", "n >= 6").status == CheckStatus::pass);
    CHECK(evaluate(2, Relation::eq, 2));
    CHECK(evaluate(2, Relation::ge, 2));
    CHECK_FALSE(evaluate(2, Relation::gt, 2));
    CHECK_FALSE(evaluate(2, Relation::lt, 2));
    const auto sk = skipped_check("y", Relation::ge, "a", "budget");
    CHECK_FALSE(sk.lhs.has_value());
    CertificateReport r;
    r.checks = {ok, bad, unmet, sk};
    CHECK(r.any_failed());
    CHECK(r.count(CheckStatus::skipped) == 2);
    CHECK(r.find("y") != nullptr);
    CHECK(r.find("z") == nullptr);
}

TEST_CASE("simplified threshold quantities for n = kappa = 2, a = (2, 1)") {
    const auto p = params_of(2, {2, 1});
    CHECK(lambda_tilde(p) == 48);
    const auto T = compute_I_tilde(p);
    CHECK(fujiwara_integer_bound(T) == 48);
    CHECK(fujiwara_ratio(T, 48) <= 1);
    CHECK(fujiwara_ratio(T, 47) > 1);
    CHECK_THROWS_AS(lambda_tilde(params_of(3, {2, 1})), std::invalid_argument);
}

TEST_CASE("lambda~ is twice the ratio of the first two simplified coefficients") {
    oracle::Gen g(71);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(g.integer(1, 5));
        const int kappa = static_cast<int>(g.integer(n, 6));
        const Parameters p(n, kappa, WeightVector(g.weights(static_cast<std::size_t>(kappa), 9)), 0);
        const auto T = compute_I_tilde(p);
        CHECK(lambda_tilde(p) == 2 * T.conventional(1) / T.conventional(0));
    }
}

TEST_CASE("exact Fujiwara comparison matches the integer bound") {
    oracle::Gen g(73);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(g.integer(1, 6));
        std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
        for (auto& x : c) x = g.integer(-50, 50);
        if (c[0] == 0) c[0] = 3;
        const IntersectionPolynomial p(n, c);
        const Integer M = fujiwara_integer_bound(p);
        CHECK(fujiwara_ratio(p, Rational(M)) <= 1);
        if (M > 1) CHECK(fujiwara_ratio(p, Rational(M - 1)) > 1);
        CHECK(M == fujiwara_bound(UPoly::from(p)));
    }
}

TEST_CASE("theorem bounds") {
    CHECK(theorem_bounds(2).main == 400);
    CHECK(theorem_bounds(2).small_n == 400);
    CHECK(theorem_bounds(6).existence_d == 2426112);
    CHECK(theorem_bounds(6).existence_delta_inv == 35 * 46656);
    CHECK(theorem_bounds(1).main == 25);
    CHECK_THROWS(theorem_bounds(0));
}

TEST_CASE("hypotheses") {
    const auto good = check_hypotheses(Parameters::geometric(6, 6, Parameters::canonical_delta(6)));
    CHECK_FALSE(good.any_failed());
    CHECK(good.count(CheckStatus::pass) == good.checks.size());
    const auto small = check_hypotheses(params_of(2, {2, 1}, 1));
    CHECK(small.find("hypothesis.n_ge_6")->status == CheckStatus::fail);
    CHECK(small.find("hypothesis.nef_weights")->status == CheckStatus::fail);
    CHECK(small.find("hypothesis.delta_small")->status == CheckStatus::fail);
    CHECK(small.find("hypothesis.geometric_weights")->status == CheckStatus::pass);
    CHECK(geometric_ratio_n(Parameters::geometric(4, 4, 0).scaled(5)));
    CHECK_FALSE(geometric_ratio_n(params_of(3, {9, 3, 2})));
}

TEST_CASE("closed products at the geometric point") {
    for (int n = 3; n <= 12; ++n) {
        const auto p = Parameters::geometric(n, n, 0);
        const Rational c = eval_C_at(p), a = eval_absC_at(p);
        CHECK(c == closed_C_geometric(n));
        CHECK(a == closed_absC_geometric(n));
        CHECK(a / c == closed_ratio_geometric(n));
    }
}

TEST_CASE("positive contribution sum") {
    CHECK(positive_contribution_sum(Parameters::geometric(5, 5, 0)) >= 2);
    CHECK(positive_contribution_sum(Parameters::geometric(6, 6, 0)) >= 2);
    CHECK(positive_contribution_sum(Parameters::geometric(4, 4, 0)) < 2);
    CHECK_THROWS_AS(positive_contribution_sum(params_of(2, {3, 2, 1})), std::invalid_argument);
    // It bounds the positive part of the leading coefficient from below.
    for (int n = 2; n <= 4; ++n) {
        const auto p = Parameters::geometric(n, n, 0);
        const auto D = decompose_I0(p);
        CHECK(D.plus >= positive_contribution_sum(p) * compute_I_tilde(p).conventional(0));
    }
}

TEST_CASE("composition envelopes for n = 6 .. 64") {
    Rational prev = pow(Rational(6, 5), 3);
    for (int n = 6; n <= 64; ++n) {
        const Rational cube = pow(Rational(n, n - 1), 3);
        CHECK(Rational(15, 2) * 4 * cube <= 52);
        CHECK(5 * 4 * cube <= 35);
        CHECK(cube <= prev);  // nonincreasing, so the bound at n = 6 covers larger n
        prev = cube;
    }
}

TEST_CASE("certificates without the full polynomial") {
    CertifyOptions opts;
    opts.budget = 1;
    const auto r = certify_envelopes(Parameters::geometric(6, 6, Parameters::canonical_delta(6)), opts);
    CHECK_FALSE(r.any_failed());
    for (const char* name : {"C.lower", "C.below_majorant", "C.majorant_le_5", "C.ratio_le_3_2", "envelope.I0_plus",
                             "envelope.I0_minus", "envelope.I0_slope", "envelope.I0", "envelope.I1", "envelope.Ip",
                             "lambda.lower", "lambda.upper", "compose.degree", "compose.delta", "B.majorant_bound"}) {
        CAPTURE(name);
        REQUIRE(r.find(name) != nullptr);
        CHECK(r.find(name)->status == CheckStatus::pass);
    }
    const auto* lead = r.find("leading.I0");
    REQUIRE(lead != nullptr);
    CHECK(lead->status == CheckStatus::skipped);
    CHECK(starts_with(lead->note, "budget"));
}

TEST_CASE("certificates with the full polynomial for small n") {
    for (int n = 2; n <= 4; ++n) {
        const auto p = Parameters::geometric(n, n, Parameters::canonical_delta(n));
        const auto r = certify_envelopes(p);
        CAPTURE(n);
        CHECK_FALSE(r.any_failed());
        CHECK(r.find("leading.decomposition")->status == CheckStatus::pass);
        CHECK(r.find("tilde.lambda_identity")->status == CheckStatus::pass);
    }
    // Reusing a supplied polynomial gives the same report.
    const auto p = Parameters::geometric(3, 3, Parameters::canonical_delta(3));
    CertifyOptions with_I;
    with_I.full_I = compute_I(p);
    const auto a = certify_envelopes(p), b = certify_envelopes(p, with_I);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        CHECK(a.checks[i].status == b.checks[i].status);
    }
}

TEST_CASE("ratio-type certificates are scale invariant") {
    for (int n = 3; n <= 7; ++n) {
        const auto p = Parameters::geometric(n, n, Parameters::canonical_delta(n));
        CertifyOptions opts;
        opts.budget = 1;
        const auto base = certify_envelopes(p, opts);
        for (const Integer c : {Integer(2), Integer(n)}) {
            const auto scaled = certify_envelopes(p.scaled(c), opts);
            for (const auto& chk : base.checks) {
                const bool ratio = starts_with(chk.name, "C.") || starts_with(chk.name, "envelope.") ||
                                   starts_with(chk.name, "lambda.") || starts_with(chk.name, "B.") ||
                                   starts_with(chk.name, "compose.");
                if (!ratio) continue;
                const auto* other = scaled.find(chk.name);
                REQUIRE(other != nullptr);
                CHECK(other->status == chk.status);
                CHECK(other->lhs == chk.lhs);
                CHECK(other->rhs == chk.rhs);
            }
        }
    }
}

TEST_CASE("points outside the convergence domain skip the C checks") {
    const auto r = certify_envelopes(params_of(2, {2, 1}));
    const auto* c = r.find("C.lower");
    REQUIRE(c != nullptr);
    CHECK(c->status == CheckStatus::skipped);
    CHECK(c->note.find("convergence") != std::string::npos);
}
