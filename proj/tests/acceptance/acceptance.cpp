// One line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "hyperbound/bounds.hpp"
#include "hyperbound/cli.hpp"
#include "oracles.hpp"

using namespace hyperbound;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::string str(const Integer& x) { return to_string(x); }

// Criterion 1.
Outcome closed_form_oracle() {
    oracle::Gen g(1001);
    int cases = 0;
    for (int n = 2; n <= 4; ++n) {
        for (int kappa = n; kappa <= 4; ++kappa) {
            for (int trial = 0; trial < 10; ++trial) {
                const Parameters p(n, kappa, WeightVector(g.weights(static_cast<std::size_t>(kappa), 7)), 0);
                const auto T = compute_I_tilde(p);
                for (int q = 0; q <= n; ++q) {
                    if (T.conventional(q) != compute_I_tilde_direct(p, q)) {
                        return {false, "mismatch at n=" + std::to_string(n) + " kappa=" + std::to_string(kappa)};
                    }
                }
                ++cases;
            }
        }
    }
    return {true, std::to_string(cases) + " parameter sets, every coefficient equal"};
}

// Criterion 2.
Outcome route_equivalence() {
    struct Case {
        int n;
        std::vector<long> a;
    };
    const std::vector<Case> cases{{2, {2, 1}}, {2, {4, 1}}, {3, {9, 3, 1}}, {3, {16, 4, 1}}};
    int count = 0;
    for (const auto& c : cases) {
        for (const Rational& delta : {Rational(0), Parameters::canonical_delta(c.n)}) {
            const Parameters p(c.n, c.n, WeightVector(std::vector<Integer>(c.a.begin(), c.a.end())), delta);
            const auto cauchy = compute_I(p);
            const auto direct = compute_I_by_direct_product(p);
            if (!(cauchy == direct)) return {false, "routes differ at n=" + std::to_string(c.n)};
            ++count;
        }
    }
    return {true, std::to_string(count) + " (a, delta) pairs, all coefficients equal"};
}

// Criterion 3.
Outcome support_of_c() {
    std::ostringstream detail;
    long terms = 0;
    for (int kappa = 2; kappa <= 6; ++kappa) {
        // Largest n whose default window keeps the expansion small enough to enumerate.
        const int n = kappa <= 4 ? kappa : 2;
        const auto policy = default_C_policy(Parameters::geometric(n, kappa, 0));
        const auto C = build_C_truncated(kappa, policy);
        for (const auto& t : C) {
            if (t.exponent.total() != 0) return {false, "nonzero total degree " + t.exponent.to_string()};
            long suffix = 0;
            for (int i = kappa - 1; i >= 0; --i) {
                suffix += t.exponent[static_cast<std::size_t>(i)];
                if (suffix > 0) return {false, "positive suffix sum at " + t.exponent.to_string()};
            }
        }
        terms += static_cast<long>(C.size());
        detail << " kappa=" << kappa << "(n=" << n << "):" << C.size();
    }
    return {true, std::to_string(terms) + " terms checked," + detail.str()};
}

// Criterion 4.
Outcome low_order_expansion() {
    for (int kappa = 3; kappa <= 8; ++kappa) {
        auto policy = TruncationPolicy::unbounded(static_cast<std::size_t>(kappa));
        policy.weighted_cap(weighted_length_weights(static_cast<std::size_t>(kappa)), 2);
        const auto C = build_C_truncated(kappa, policy);
        std::vector<Term> expect;
        expect.push_back({ExponentVector(static_cast<std::size_t>(kappa)), 1});
        auto ratio = [&](int i) {  // t_i / t_{i+1}, 1-based
            ExponentVector e(static_cast<std::size_t>(kappa));
            e[static_cast<std::size_t>(i - 1)] = 1;
            e[static_cast<std::size_t>(i)] = -1;
            return e;
        };
        for (int i = 1; i < kappa; ++i) {
            expect.push_back({ratio(i), 1});
            expect.push_back({ratio(i) + ratio(i), 2});
            for (int j = i + 1; j < kappa; ++j) expect.push_back({ratio(i) + ratio(j), 1});
        }
        const auto E = SparseSeries::from_terms(static_cast<std::size_t>(kappa), expect);
        if (!(C == E)) return {false, "expansion differs at kappa=" + std::to_string(kappa) + ": " + C.to_string()};
        ExponentVector skip(static_cast<std::size_t>(kappa));
        skip[0] = 1;
        skip[2] = -1;
        if (C.coefficient(skip) != 1) return {false, "coefficient of t_1/t_3 is not 1"};
    }
    return {true, "kappa = 3..8 match the expected expansion exactly, t_i/t_(i+2) has coefficient 1"};
}

// Criterion 5.
Outcome c_at_weights() {
    for (int n = 6; n <= 12; ++n) {
        const auto p = Parameters::geometric(n, n, 0);
        const Rational c = eval_C_at(p), a = eval_absC_at(p);
        const bool ok = Rational(2, 3) * a <= c && c <= a && a <= 5 && a / c <= Rational(3, 2);
        if (!ok) return {false, "fails at n=" + std::to_string(n)};
        if (c != closed_C_geometric(n) || a != closed_absC_geometric(n)) {
            return {false, "closed product disagrees at n=" + std::to_string(n)};
        }
    }
    const auto p6 = Parameters::geometric(6, 6, 0);
    return {true, "n = 6..12 exact; at n=6 |C|/C ~ " + std::to_string(approximate(eval_absC_at(p6) / eval_C_at(p6)))};
}

// Criterion 6.
Outcome lambda_envelope() {
    for (int n = 6; n <= 12; ++n) {
        const auto p = Parameters::geometric(n, n, 0);
        const Rational r = lambda_tilde(p) / pow(Rational(n), n);
        if (!(r >= 4 && r <= 4 * pow(Rational(n, n - 1), 3))) return {false, "fails at n=" + std::to_string(n)};
    }
    return {true, "n = 6..12 exact"};
}

struct FullRun {
    int n;
    Parameters params;
    std::optional<IntersectionPolynomial> I;
    std::string skip;
};

std::vector<FullRun>& full_runs(std::size_t budget) {
    static std::vector<FullRun> runs = [budget] {
        std::vector<FullRun> out;
        for (int n = 2; n <= 6; ++n) {
            FullRun r{n, Parameters::geometric(n, n, Parameters::canonical_delta(n)), std::nullopt, ""};
            try {
                ComputeOptions co;
                co.budget = budget;
                r.I = compute_I(r.params, co);
            } catch (const BudgetExceeded& e) {
                r.skip = std::string("skipped: budget (") + e.what() + ")";
            }
            out.push_back(std::move(r));
        }
        return out;
    }();
    return runs;
}

// Criterion 7.
Outcome small_n_theorem(std::size_t budget) {
    std::ostringstream d;
    Outcome out;
    for (const auto& r : full_runs(budget)) {
        if (r.n > 5) continue;
        if (!r.I) {
            if (r.n <= 4) return {false, "n=" + std::to_string(r.n) + " is required but " + r.skip};
            d << " n=" << r.n << " " << r.skip << ";";
            continue;
        }
        const Integer d0 = minimal_positive_degree(*r.I);
        const Integer bound = theorem_bounds(r.n).small_n;
        const bool exact = r.I->eval(Rational(d0)) > 0 && (d0 == 1 || r.I->eval(Rational(d0 - 1)) <= 0);
        if (!exact || d0 > bound) out.ok = false;
        d << " n=" << r.n << ": d0=" << str(d0) << " <= " << str(bound) << ";";
    }
    out.detail = d.str();
    return out;
}

// Criterion 8.
Outcome leading_certificate(std::size_t budget) {
    std::ostringstream d;
    int largest = 0;
    for (const auto& r : full_runs(budget)) {
        if (!r.I) {
            d << " n=" << r.n << " " << r.skip << ";";
            continue;
        }
        const auto D = decompose_I0(r.params, budget);
        if (D.leading(r.params.delta()) != r.I->conventional(0)) {
            return {false, "decomposition identity fails at n=" + std::to_string(r.n)};
        }
        const Rational ratio = r.I->conventional(0) / compute_I_tilde(r.params).conventional(0);
        if (ratio < Rational(2, 3)) return {false, "I0 < (2/3) I~0 at n=" + std::to_string(r.n)};
        largest = r.n;
        d << " n=" << r.n << ": identity exact, I0/I~0 ~ " << approximate(ratio) << ";";
    }
    if (largest < 3) return {false, "full I fits only up to n=" + std::to_string(largest) + d.str()};
    for (int n = 6; n <= 12; ++n) {
        CertifyOptions opts;
        opts.budget = 1;
        const auto rep = certify_envelopes(Parameters::geometric(n, n, Parameters::canonical_delta(n)), opts);
        for (const char* name : {"envelope.I0_plus", "envelope.I0_minus", "envelope.I0_slope", "envelope.I0"}) {
            const Check* c = rep.find(name);
            if (c == nullptr || c->status != CheckStatus::pass) {
                return {false, std::string(name) + " does not pass at n=" + std::to_string(n)};
            }
        }
    }
    d << " envelopes (a)(b)(c) pass for n = 6..12";
    return {true, d.str()};
}

// Criterion 9.
Outcome coefficient_certificates(std::size_t budget) {
    std::ostringstream d;
    for (const auto& r : full_runs(budget)) {
        if (!r.I) continue;
        const auto T = compute_I_tilde(r.params);
        if (abs(r.I->conventional(1)) > 5 * T.conventional(1)) return {false, "|I1| > 5 I~1 at n=" + std::to_string(r.n)};
        for (int p = 2; p <= r.n; ++p) {
            if (abs(r.I->conventional(p)) > 12 * T.conventional(p)) {
                return {false, "|I_p| > 12 I~_p at n=" + std::to_string(r.n) + ", p=" + std::to_string(p)};
            }
        }
        d << " n=" << r.n << " ok;";
    }
    oracle::Gen g(909);
    for (int n = 2; n <= 12; ++n) {
        std::vector<Parameters> ps{Parameters::geometric(n, n, 0)};
        for (int k = 0; k < 5; ++k) ps.emplace_back(n, n, WeightVector(g.weights(static_cast<std::size_t>(n), 20)), 0);
        for (const auto& p : ps) {
            if (eval_absB_at(p) > pow(Rational(2 * n, 2 * n - 1), n + 1)) {
                return {false, "|B| bound fails at n=" + std::to_string(n)};
            }
        }
    }
    d << " |B| bound exact for n = 2..12 (geometric and random weights)";
    return {true, d.str()};
}

// Criterion 10.
Outcome root_machinery() {
    oracle::Gen g(1010);
    int roots = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int deg = static_cast<int>(g.integer(1, 8));
        std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = g.integer(-40, 40);
        c.back() = g.integer(1, 40);
        const UPoly p(c);
        const Integer M = fujiwara_bound(p);
        const SturmChain chain(p);
        if (count_above(chain, Rational(M)) != 0) return {false, "root above the Fujiwara bound"};
        for (const auto& iv : isolate_real_roots(p, Rational(1, 16))) {
            if (iv.second > Rational(M) || iv.first < Rational(-M - 1)) return {false, "isolating interval escapes the bound"};
            ++roots;
        }
        const Integer d0 = minimal_positive_degree(p);
        if (p.sign_at(Rational(d0)) <= 0) return {false, "poly(d0) <= 0"};
        if (d0 > 1 && p.sign_at(Rational(d0 - 1)) > 0) return {false, "d0 is not minimal"};
        // No root above max(d0, M) and every integer up to there is positive.
        for (Integer d = d0; d <= M; ++d) {
            if (p.sign_at(Rational(d)) <= 0) return {false, "nonpositive value above d0"};
        }
        if (count_above(chain, Rational(std::max(d0, M))) != 0) return {false, "root above d0"};
    }
    return {true, std::to_string(roots) + " isolated roots on 200 polynomials"};
}

// Criterion 11.
Outcome newton() {
    oracle::Gen g(1111);
    long checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t len = static_cast<std::size_t>(g.integer(2, 12));
        std::vector<Rational> xs;
        for (std::size_t i = 0; i < len; ++i) xs.push_back(g.positive_rational(1000, 97));
        const auto s = elementary_symmetric_all(xs);
        for (std::size_t p = 1; p < len; ++p) {
            if (s[p] * s[p] < s[p - 1] * s[p + 1]) return {false, "violated"};
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " inequalities on 500 lists"};
}

}  // namespace

int main() {
    const std::size_t budget = resolve_budget(std::nullopt, std::getenv("HYPERBOUND_BUDGET"));
    struct Criterion {
        int id;
        const char* title;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "closed-form oracle equivalence", 10, closed_form_oracle},
        {2, "route equivalence", 120, route_equivalence},
        {3, "support of C", 60, support_of_c},
        {4, "low-order expansion of C", 10, low_order_expansion},
        {5, "C and |C| at 1/a for n = 6..12", 5, c_at_weights},
        {6, "lambda~ envelope", 1, lambda_envelope},
        {7, "small-n degree threshold", 1800, [&] { return small_n_theorem(budget); }},
        {8, "leading-coefficient certificate", 1800, [&] { return leading_certificate(budget); }},
        {9, "coefficient and |B| certificates", 1800, [&] { return coefficient_certificates(budget); }},
        {10, "root machinery", 30, root_machinery},
        {11, "Newton inequalities", 5, newton},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_s) {
            o.ok = false;
            o.detail += " [time limit " + std::to_string(c.limit_s) + " s exceeded]";
        }
        all = all && o.ok;
        std::printf("criterion %2d %s: %s (%.2f s) %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
