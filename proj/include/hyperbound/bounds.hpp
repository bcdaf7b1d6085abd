#ifndef HYPERBOUND_BOUNDS_HPP
#define HYPERBOUND_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hyperbound/intersection.hpp"
#include "hyperbound/rootfind.hpp"

namespace hyperbound {

enum class Relation { le, lt, ge, gt, eq };
enum class CheckStatus { pass, fail, skipped };

std::string to_string(Relation r);
std::string to_string(CheckStatus s);
bool evaluate(const Rational& lhs, Relation rel, const Rational& rhs);

/// One exact inequality. lhs/rhs are present whenever they were evaluated,
/// including for skipped checks whose precondition was not met.
struct Check {
    std::string name;
    std::optional<Rational> lhs;
    Relation rel = Relation::le;
    std::optional<Rational> rhs;
    CheckStatus status = CheckStatus::skipped;
    std::string anchor;  // the inequality in words
    std::string note;    // reason for a skip, empty otherwise
};

/// Evaluates lhs rel rhs. A false relation whose precondition is unmet
/// (non-empty `unmet`) is reported as skipped, never as passed.
Check make_check(std::string name, const Rational& lhs, Relation rel, const Rational& rhs, std::string anchor,
                 const std::string& unmet = {});
Check skipped_check(std::string name, Relation rel, std::string anchor, std::string reason);

struct CertificateReport {
    std::vector<Check> checks;

    bool any_failed() const;
    std::size_t count(CheckStatus s) const;
    const Check* find(const std::string& name) const;
    void append(const CertificateReport& other);
};

/// Smallest integer M >= 1 with (M/2)^p >= |c_p / c_0| for p = 1 .. n.
Integer fujiwara_integer_bound(const IntersectionPolynomial& poly);

/// max_p 2^p |c_p / c_0| / K^p: at most 1 exactly when the Fujiwara bound
/// 2 max |c_p/c_0|^(1/p) is at most K.
Rational fujiwara_ratio(const IntersectionPolynomial& poly, const Rational& K);

/// 4 n mu s_{n-1}(a) / s_n(a). Needs kappa >= n.
Rational lambda_tilde(const Parameters& params);

/// a_i = n a_{i+1} for every i (any overall scale).
bool geometric_ratio_n(const Parameters& params);

/// kappa = n, n >= 6, geometric weights with ratio n, 5 delta lambda~ <= 1,
/// and a_i >= 3 a_{i+1}. Failures are reported, not thrown.
CertificateReport check_hypotheses(const Parameters& params);

/// Lower bound of I0+/I~0 from the positive coefficients of C of weighted
/// length below 3. Needs kappa = n.
Rational positive_contribution_sum(const Parameters& params);

/// Closed products at t = 1/a for a_i = n^(n-i); only meaningful for n >= 3.
Rational closed_C_geometric(int n);
Rational closed_absC_geometric(int n);
Rational closed_ratio_geometric(int n);

struct CertifyOptions {
    std::size_t budget = kDefaultBudget;
    /// Reuse an already computed I(d) instead of recomputing.
    std::optional<IntersectionPolynomial> full_I;
};

/// Leading-coefficient, |C|, |B| and Fujiwara certificates. Checks that need
/// the full I(d) are skipped with reason "budget" when it does not fit.
CertificateReport certify_envelopes(const Parameters& params, const CertifyOptions& options = {});

struct TheoremBounds {
    Integer main;                 // (5n)^2 n^n
    Integer existence_d;          // 52 n^n
    Integer existence_delta_inv;  // 35 n^n
    Integer small_n;              // 25 n^(n+2)
};
TheoremBounds theorem_bounds(int n);

}  // namespace hyperbound

#endif  // HYPERBOUND_BOUNDS_HPP
