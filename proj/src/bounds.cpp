#include "hyperbound/bounds.hpp"

#include <stdexcept>

namespace hyperbound {

std::string to_string(Relation r) {
    switch (r) {
        case Relation::le: return "<=";
        case Relation::lt: return "<";
        case Relation::ge: return ">=";
        case Relation::gt: return ">";
        case Relation::eq: return "=";
    }
    return "?";
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

bool evaluate(const Rational& lhs, Relation rel, const Rational& rhs) {
    switch (rel) {
        case Relation::le: return lhs <= rhs;
        case Relation::lt: return lhs < rhs;
        case Relation::ge: return lhs >= rhs;
        case Relation::gt: return lhs > rhs;
        case Relation::eq: return lhs == rhs;
    }
    return false;
}

Check make_check(std::string name, const Rational& lhs, Relation rel, const Rational& rhs, std::string anchor,
                 const std::string& unmet) {
    Check c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rel = rel;
    c.rhs = rhs;
    c.anchor = std::move(anchor);
    if (evaluate(lhs, rel, rhs)) {
        c.status = CheckStatus::pass;
    } else if (!unmet.empty()) {
        c.status = CheckStatus::skipped;
        c.note = "precondition not met (" + unmet + "); relation is false for these parameters";
    } else {
        c.status = CheckStatus::fail;
    }
    return c;
}

Check skipped_check(std::string name, Relation rel, std::string anchor, std::string reason) {
    Check c;
    c.name = std::move(name);
    c.rel = rel;
    c.status = CheckStatus::skipped;
    c.anchor = std::move(anchor);
    c.note = std::move(reason);
    return c;
}

bool CertificateReport::any_failed() const { return count(CheckStatus::fail) > 0; }

std::size_t CertificateReport::count(CheckStatus s) const {
    std::size_t k = 0;
    for (const auto& c : checks) k += c.status == s ? 1 : 0;
    return k;
}

const Check* CertificateReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

void CertificateReport::append(const CertificateReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

Integer fujiwara_integer_bound(const IntersectionPolynomial& poly) {
    if (poly.raw(0) == 0) throw std::domain_error("Fujiwara bound needs a nonzero leading coefficient");
    return fujiwara_bound(UPoly::from(poly));
}

Rational fujiwara_ratio(const IntersectionPolynomial& poly, const Rational& K) {
    const Rational& c0 = poly.raw(0);
    if (c0 == 0) throw std::domain_error("Fujiwara bound needs a nonzero leading coefficient");
    if (K <= 0) throw std::invalid_argument("Fujiwara comparison needs a positive bound");
    Rational best = 0;
    for (int p = 1; p <= poly.n(); ++p) {
        const Rational v = pow(Rational(2) / K, p) * abs(Rational(poly.raw(p) / c0));
        if (v > best) best = v;
    }
    return best;
}

Rational lambda_tilde(const Parameters& params) {
    const int n = params.n();
    if (params.kappa() < n) throw std::invalid_argument("lambda~ needs kappa >= n");
    const std::vector<Rational> a = params.a().as_rationals();
    const std::vector<Rational> s = elementary_symmetric_all(a);
    return Rational(4 * n) * Rational(params.mu()) * s[static_cast<std::size_t>(n - 1)] / s[static_cast<std::size_t>(n)];
}

bool geometric_ratio_n(const Parameters& params) {
    for (std::size_t i = 0; i + 1 < params.a().size(); ++i) {
        if (params.a()[i] != params.n() * params.a()[i + 1]) return false;
    }
    return true;
}

CertificateReport check_hypotheses(const Parameters& params) {
    CertificateReport r;
    const int n = params.n();
    r.checks.push_back(make_check("hypothesis.kappa_eq_n", params.kappa(), Relation::eq, n, "kappa = n"));
    r.checks.push_back(make_check("hypothesis.n_ge_6", n, Relation::ge, 6, "n >= 6"));
    long not_geometric = 0, not_nef = 0;
    for (std::size_t i = 0; i + 1 < params.a().size(); ++i) {
        if (params.a()[i] != n * params.a()[i + 1]) ++not_geometric;
        if (params.a()[i] < 3 * params.a()[i + 1]) ++not_nef;
    }
    r.checks.push_back(make_check("hypothesis.geometric_weights", not_geometric, Relation::eq, 0,
                                  "number of i with a_i != n a_(i+1) is 0"));
    if (params.kappa() >= n) {
        r.checks.push_back(
            make_check("hypothesis.delta_small", 5 * params.delta() * lambda_tilde(params), Relation::le, 1,
                       "5 delta lambda~ <= 1"));
    } else {
        r.checks.push_back(skipped_check("hypothesis.delta_small", Relation::le, "5 delta lambda~ <= 1",
                                         "lambda~ is undefined for kappa < n"));
    }
    r.checks.push_back(make_check("hypothesis.nef_weights", not_nef, Relation::eq, 0,
                                  "number of i with a_i < 3 a_(i+1) is 0"));
    return r;
}

Rational positive_contribution_sum(const Parameters& params) {
    const int n = params.n();
    if (params.kappa() != n) throw std::invalid_argument("positive contribution sum needs kappa = n");
    const std::vector<Rational> a = params.a().as_rationals();
    auto A = [&](int i) -> const Rational& { return a[static_cast<std::size_t>(i - 1)]; };
    const Rational nn(n);
    Rational s = 1;
    for (int i = 1; i <= n - 1; ++i) {
        s += nn * A(i + 1) / ((nn + 1) * A(i));
        s += 2 * nn * (nn - 1) * A(i + 1) * A(i + 1) / ((nn + 1) * (nn + 2) * A(i) * A(i));
    }
    for (int i = 1; i <= n - 2; ++i) s += nn * A(i + 2) / ((nn + 1) * A(i));
    for (int i = 1; i <= n - 3; ++i) {
        for (int j = i + 2; j <= n - 1; ++j) {
            s += nn * nn * A(i + 1) * A(j + 1) / ((nn + 1) * (nn + 1) * A(i) * A(j));
        }
    }
    return s;
}

namespace {

Rational npow(int n, int k) { return Rational(pow(Integer(n), static_cast<unsigned long>(k))); }

Rational closed_product(int n, const Rational& shift) {
    Rational v = 1;
    for (int k = 1; k <= n - 1; ++k) {
        const Rational nk = npow(n, k);
        v *= pow(Rational(nk - 1), n - k) / ((nk - 2) * pow(Rational(nk - shift), n - 1 - k));
    }
    return v;
}

}  // namespace

Rational closed_C_geometric(int n) { return closed_product(n, Rational(2) - Rational(1, n)); }
Rational closed_absC_geometric(int n) { return closed_product(n, Rational(2) + Rational(1, n)); }

Rational closed_ratio_geometric(int n) {
    Rational v = 1;
    for (int k = 2; k <= n; ++k) v *= pow(Rational(1) + Rational(2) / (npow(n, k) - 2 * n - 1), n - k);
    return v;
}

TheoremBounds theorem_bounds(int n) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    const Integer nn = pow(Integer(n), static_cast<unsigned long>(n));
    return {Integer(25 * n * n) * nn, 52 * nn, 35 * nn, 25 * pow(Integer(n), static_cast<unsigned long>(n + 2))};
}

namespace {

std::string join_unmet(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "; " + b;
}

}  // namespace

CertificateReport certify_envelopes(const Parameters& params, const CertifyOptions& options) {
    CertificateReport r;
    auto& out = r.checks;
    const int n = params.n();
    const int kappa = params.kappa();
    if (kappa < n) throw std::invalid_argument("certificates need kappa >= n");
    const Rational& delta = params.delta();
    const Rational lt = lambda_tilde(params);
    const IntersectionPolynomial tilde = compute_I_tilde(params);
    auto T = [&](int p) { return p > n ? Rational(0) : tilde.conventional(p); };
    const bool geometric = geometric_ratio_n(params);

    const std::string h1 = (kappa == n && n >= 6 && geometric) ? "" : "kappa = n >= 6 with geometric weights";
    const std::string h1_five = (kappa == n && n >= 5 && geometric) ? "" : "kappa = n >= 5 with geometric weights";
    const std::string h2 = (5 * delta * lt <= 1) ? "" : "5 delta lambda~ <= 1";
    const std::string h12 = join_unmet(h1, h2);
    const std::string n6 = n >= 6 ? "" : "n >= 6";

    // Closed forms.
    out.push_back(make_check("tilde.lambda_identity", lt, Relation::eq, 2 * T(1) / T(0), "lambda~ = 2 I~1 / I~0"));
    const Rational bscaled = eval_absB_at(params);
    const Rational bcap = pow(Rational(2 * n, 2 * n - 1), n + 1);
    out.push_back(make_check("B.majorant_bound", bscaled, Relation::le, bcap,
                             "|B|(a/(2 n mu)) <= (2n/(2n-1))^(n+1)"));
    const Integer d0_tilde = minimal_positive_degree(tilde);
    out.push_back(make_check("tilde.d0_le_lambda", Rational(d0_tilde), Relation::le, Rational(ceil(lt)),
                             "d0(I~) <= ceil(lambda~)"));

    std::optional<Rational> cval, chat;
    std::string domain_reason;
    try {
        cval = eval_C_at(params);
        chat = eval_absC_at(params);
    } catch (const std::domain_error& e) {
        domain_reason = std::string("point 1/a outside the convergence domain: ") + e.what();
        cval.reset();
        chat.reset();
    }
    if (chat) {
        out.push_back(make_check("C.lower", Rational(2, 3) * *chat, Relation::le, *cval, "(2/3) |C|(1/a) <= C(1/a)", h1));
        out.push_back(make_check("C.below_majorant", *cval, Relation::le, *chat, "C(1/a) <= |C|(1/a)"));
        out.push_back(make_check("C.majorant_le_5", *chat, Relation::le, 5, "|C|(1/a) <= 5", h1));
        out.push_back(make_check("C.ratio_le_3_2", *chat / *cval, Relation::le, Rational(3, 2),
                                 "|C|(1/a) / C(1/a) <= 3/2", h1));
        if (kappa == n && geometric && n >= 3) {
            out.push_back(make_check("C.closed_product", *cval, Relation::eq, closed_C_geometric(n),
                                     "C(1/a) = prod_k (n^k-1)^(n-k) / ((n^k-2)(n^k-2+1/n)^(n-1-k))"));
            out.push_back(make_check("C.majorant_closed_product", *chat, Relation::eq, closed_absC_geometric(n),
                                     "|C|(1/a) = prod_k (n^k-1)^(n-k) / ((n^k-2)(n^k-2-1/n)^(n-1-k))"));
            out.push_back(make_check("C.ratio_closed_product", *chat / *cval, Relation::eq, closed_ratio_geometric(n),
                                     "|C|/C at 1/a = prod_{k=2..n} (1 + 2/(n^k-2n-1))^(n-k)"));
        }
        out.push_back(make_check("envelope.I0_minus", (*chat - *cval) / 2, Relation::le, Rational(5, 6),
                                 "(|C|(1/a) - C(1/a)) / 2 <= 5/6", h1));
        out.push_back(make_check("envelope.I0_slope", lt / 2 * *chat, Relation::le, 5 * lt / 2,
                                 "(lambda~/2) |C|(1/a) <= 5 lambda~ / 2", h1));
        const Rational g = (1 + 3 * delta * lt) / 2 + (1 + delta * lt) / (2 * n) + delta * (n + 1);
        out.push_back(make_check("envelope.I1_factor", g, Relation::le, 1,
                                 "(1+3 delta lambda~)/2 + (1+delta lambda~)/(2n) + delta (n+1) <= 1", h12));
        out.push_back(make_check("envelope.I1", g * *chat, Relation::le, 5, "I1 factor times |C|(1/a) <= 5", h12));
        out.push_back(make_check("envelope.Ip", (2 + delta * lt) / 2 * bcap * *chat, Relation::le, 12,
                                 "((2 + delta lambda~)/2) (2n/(2n-1))^(n+1) |C|(1/a) <= 12", h12));
    } else {
        for (const char* name : {"C.lower", "C.below_majorant", "C.majorant_le_5", "C.ratio_le_3_2", "envelope.I0_minus",
                                 "envelope.I0_slope", "envelope.I1_factor", "envelope.I1", "envelope.Ip"}) {
            out.push_back(skipped_check(name, Relation::le, "needs C and |C| at 1/a", domain_reason));
        }
    }
    if (kappa == n) {
        out.push_back(make_check("envelope.I0_plus", positive_contribution_sum(params), Relation::ge, 2,
                                 "positive contributions of C below weighted length 3, over I~0, >= 2", h1_five));
    } else {
        out.push_back(skipped_check("envelope.I0_plus", Relation::ge, "positive contribution sum >= 2", "needs kappa = n"));
    }
    out.push_back(make_check("envelope.I0", Rational(2) - Rational(5, 6) - Rational(5, 2) * delta * lt, Relation::ge,
                             Rational(2, 3), "2 - 5/6 - (5/2) delta lambda~ >= 2/3", h12));
    out.push_back(make_check("envelope.fujiwara_p_ge_2", 18, Relation::le, Rational(225, 4),
                             "(3/2) 12 <= (15/2)^2, so 18^(1/p) <= 15/2 for p >= 2"));

    if (kappa == n && geometric && n >= 2) {
        const Rational ratio = lt / npow(n, n);
        const Rational cube = 4 * pow(Rational(n, n - 1), 3);
        out.push_back(make_check("lambda.lower", ratio, Relation::ge, 4, "lambda~ / n^n >= 4"));
        out.push_back(make_check("lambda.upper", ratio, Relation::le, cube, "lambda~ / n^n <= 4 (n/(n-1))^3"));
        out.push_back(make_check("compose.degree", Rational(15, 2) * cube, Relation::le, 52,
                                 "(15/2) 4 (n/(n-1))^3 <= 52", n6));
        out.push_back(make_check("compose.delta", 5 * cube, Relation::le, 35, "5 4 (n/(n-1))^3 <= 35", n6));
    }
    out.push_back(make_check("compose.delta_choice", 35 * npow(n, n) * delta, Relation::le, 1, "35 n^n delta <= 1"));

    // Full I(d).
    std::optional<IntersectionPolynomial> I = options.full_I;
    std::string budget_reason;
    if (!I) {
        try {
            ComputeOptions co;
            co.budget = options.budget;
            I = compute_I(params, co);
        } catch (const BudgetExceeded& e) {
            budget_reason = std::string("budget: ") + e.what();
        }
    }
    std::optional<I0Decomposition> D;
    if (kappa == n && I) {
        try {
            D = decompose_I0(params, options.budget);
        } catch (const BudgetExceeded& e) {
            budget_reason = std::string("budget: ") + e.what();
        }
    }

    const auto skip_all = [&](std::initializer_list<const char*> names, const std::string& reason) {
        for (const char* name : names) out.push_back(skipped_check(name, Relation::le, "needs the full I(d)", reason));
    };

    if (I && D) {
        out.push_back(make_check("leading.decomposition", D->leading(delta), Relation::eq, I->conventional(0),
                                 "I0+ - I0- - delta I0' = I0"));
        out.push_back(make_check("leading.I0_plus", D->plus, Relation::ge, 2 * T(0), "I0+ >= 2 I~0", h1_five));
        out.push_back(make_check("leading.I0_minus", D->minus, Relation::le, Rational(5, 6) * T(0),
                                 "I0- <= (5/6) I~0", h1));
        if (chat) {
            out.push_back(make_check("leading.I0_slope", abs(D->slope), Relation::le, lt / 2 * *chat * T(0),
                                     "|I0'| <= (lambda~/2) |C|(1/a) I~0"));
        }
        out.push_back(make_check("leading.I0_slope_5", abs(D->slope), Relation::le, 5 * lt / 2 * T(0),
                                 "|I0'| <= (5 lambda~/2) I~0", h1));
    } else if (kappa == n) {
        skip_all({"leading.decomposition", "leading.I0_plus", "leading.I0_minus", "leading.I0_slope",
                  "leading.I0_slope_5"},
                 budget_reason);
    }
    if (I) {
        out.push_back(make_check("leading.I0", I->conventional(0), Relation::ge, Rational(2, 3) * T(0),
                                 "I0 >= (2/3) I~0", h12));
        if (chat && n >= 1) {
            const Rational g = (1 + 3 * delta * lt) / 2 + (1 + delta * lt) / (2 * n) + delta * (n + 1);
            out.push_back(make_check("coeff.I1", abs(I->conventional(1)), Relation::le, T(1) * g * *chat,
                                     "|I1| <= I~1 ((1+3 delta lambda~)/2 + (1+delta lambda~)/(2n) + delta(n+1)) |C|(1/a)"));
        }
        out.push_back(make_check("coeff.I1_5", abs(I->conventional(1)), Relation::le, 5 * T(1), "|I1| <= 5 I~1", h12));
        for (int p = 1; p <= n; ++p) {
            const std::string ps = std::to_string(p);
            if (chat) {
                out.push_back(make_check("coeff.I" + ps, abs(I->conventional(p)), Relation::le,
                                         (T(p) + delta * T(p + 1)) * bscaled * *chat,
                                         "|I" + ps + "| <= (I~" + ps + " + delta I~" + std::to_string(p + 1) +
                                             ") |B| |C|(1/a)"));
                if (p == 1) out.back().name = "coeff.I1_general";
            }
            if (p >= 2) {
                out.push_back(make_check("coeff.I" + ps + "_12", abs(I->conventional(p)), Relation::le, 12 * T(p),
                                         "|I" + ps + "| <= 12 I~" + ps, h12));
            }
        }
        if (I->raw(0) != 0) {
            out.push_back(make_check("fujiwara.lambda", fujiwara_ratio(*I, Rational(15, 2) * lt), Relation::le, 1,
                                     "max_p (2 |I_p/I_0|^(1/p) / ((15/2) lambda~))^p <= 1", h12));
        }
    } else {
        skip_all({"leading.I0", "coeff.I1", "coeff.I1_5", "coeff.Ip", "fujiwara.lambda"}, budget_reason);
    }
    return r;
}

}  // namespace hyperbound
