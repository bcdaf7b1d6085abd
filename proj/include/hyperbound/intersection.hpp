#ifndef HYPERBOUND_INTERSECTION_HPP
#define HYPERBOUND_INTERSECTION_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hyperbound/integrand.hpp"

namespace hyperbound {

/// I(d) = sum_p raw[p] d^(n-p). The conventional coefficients are
/// I_0 = raw[0] and I_p = -raw[p] for p >= 1, so that
/// I(d) = I_0 d^n - I_1 d^(n-1) - ... - I_n.
class IntersectionPolynomial {
public:
    IntersectionPolynomial(int n, std::vector<Rational> raw);
    /// Builds from I_0 ... I_n in the conventional signs.
    static IntersectionPolynomial from_conventional(int n, const std::vector<Rational>& coeffs);

    int n() const { return n_; }
    const std::vector<Rational>& raw() const { return raw_; }
    const Rational& raw(int p) const;
    /// I_p in the sign convention above.
    Rational conventional(int p) const;
    Rational eval(const Rational& d) const;

    friend bool operator==(const IntersectionPolynomial&, const IntersectionPolynomial&) = default;

private:
    int n_;
    std::vector<Rational> raw_;
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::size_t required, std::size_t budget);
    std::size_t required() const { return required_; }
    std::size_t budget() const { return budget_; }

private:
    std::size_t required_;
    std::size_t budget_;
};

inline constexpr std::size_t kDefaultBudget = 50'000'000;

struct ComputeOptions {
    /// Replaces the default t-windows for C. Must contain the default window
    /// on every variable, otherwise std::invalid_argument.
    std::optional<std::vector<Window>> t_windows;
    /// Below this value of kappa * n_kappa the f_r s_m coefficients come
    /// from expanded tables, above it from the closed form on demand.
    long expansion_threshold = 256;
    /// Upper limit on the work estimate (see estimate_work).
    std::size_t budget = kDefaultBudget;
    /// Replace B or C by 1.
    bool unit_B = false;
    bool unit_C = false;
};

/// Number of ratio-variable cells of C times the number of B multi-indices
/// that the Cauchy sums touch. Throws nothing; used to gate compute_I.
std::size_t estimate_work(const Parameters& params, const ComputeOptions& options = {});
std::size_t estimate_work_I0(const Parameters& params);

/// Per-coefficient Cauchy sums: raw c_p = sum over q, |j| = q, k of
/// B_j C_k [t^(n + j - k)] P_{p,q}, where A_p = sum_q h^(n-q) P_{p,q}.
/// Needs kappa >= n. Throws BudgetExceeded if the estimate is too large.
IntersectionPolynomial compute_I(const Parameters& params, const ComputeOptions& options = {});

/// Independent route: one truncated triple product A B C with A built from
/// the integrand's defining expression. Small parameters only.
IntersectionPolynomial compute_I_by_direct_product(const Parameters& params);

/// Closed form: I~_n = (2 mu)^n n_kappa! / (n-1)!^kappa (a_1 ... a_kappa)^(n-1)
/// and I~_p = s_{n-p}(a / (2 n mu)) I~_n. Needs kappa >= n.
IntersectionPolynomial compute_I_tilde(const Parameters& params);
/// [t_1^n ... t_kappa^n](f_p s_{kappa-n+p}) by expansion.
Rational compute_I_tilde_direct(const Parameters& params, int p);

struct I0Decomposition {
    Rational plus;   // positive-coefficient part of C paired with f_0
    Rational minus;  // minus the negative-coefficient part
    Rational slope;  // C paired with f_1 s_1
    /// plus - minus - delta slope.
    Rational leading(const Rational& delta) const { return plus - minus - delta * slope; }
};

/// Requires kappa = n. Throws BudgetExceeded past the budget.
I0Decomposition decompose_I0(const Parameters& params, std::size_t budget = kDefaultBudget);

/// Caps on prefix sums m_i of C exponents that suffice for exact c_p.
std::vector<long> sufficient_prefix_caps(const Parameters& params, int max_q);

}  // namespace hyperbound

#endif  // HYPERBOUND_INTERSECTION_HPP
