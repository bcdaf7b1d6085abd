#ifndef HYPERBOUND_INTEGRAND_HPP
#define HYPERBOUND_INTEGRAND_HPP

// The three factors of the residue formula on the tower: the polynomial A
// (with its d-coefficients A_p), the alternating series B, and the rational
// function C expanded in ratios t_i / t_j (i < j). Variable order is always
// (d, h, t_1 ... t_kappa); functions document which prefix they drop.

#include <span>
#include <vector>

#include "hyperbound/combinatorics.hpp"
#include "hyperbound/rational.hpp"
#include "hyperbound/series.hpp"

namespace hyperbound {

class Parameters {
public:
    /// Throws std::invalid_argument unless n >= 1, kappa >= 1, len(a) = kappa
    /// and delta >= 0.
    Parameters(int n, int kappa, WeightVector a, Rational delta);

    /// a_i = n^(kappa - i), which is n^(n - i) when kappa = n.
    static Parameters geometric(int n, int kappa, Rational delta);
    /// 1 / (35 n^n).
    static Rational canonical_delta(int n);

    int n() const { return n_; }
    int kappa() const { return kappa_; }
    const WeightVector& a() const { return a_; }
    const Rational& delta() const { return delta_; }
    /// n + kappa (n - 1): dimension at the top of the tower.
    long n_kappa() const { return static_cast<long>(n_) + static_cast<long>(kappa_) * (n_ - 1); }
    const Integer& mu() const { return mu_; }

    /// Same n, kappa, delta with weights c a.
    Parameters scaled(const Integer& c) const;
    Parameters with_delta(Rational delta) const;

private:
    int n_;
    int kappa_;
    WeightVector a_;
    Rational delta_;
    Integer mu_;
};

enum class FactorFamily { first, second };

/// (t_j - t_i)/(t_j - 2 t_i) for 1 <= i < j <= kappa (first family), and
/// (t_j - 2 t_i)/(t_j - 2 t_i + t_{i-1}) for 2 <= i < j <= kappa (second).
/// Indices are 1-based as in the formulas.
struct FactorKind {
    FactorFamily family;
    int i;
    int j;
};

std::vector<FactorKind> c_factors(int kappa);

/// (1 - (1 - delta n - delta) i) / i!  for 0 <= i <= n + 1.
Rational alpha(int i, const Parameters& params);
/// delta i / i!  for 0 <= i <= n + 1.
Rational beta(int i, const Parameters& params);

/// Integer multiplier n_kappa! / (n_kappa - p)! (2 mu)^p in front of f_p.
Integer f_prefactor(const Parameters& params, int p);

/// f_p = n_kappa!/(n_kappa - p)! (2 mu)^p (a . t)^(n_kappa - p), fully
/// expanded, arity kappa.
SparseSeries build_f_p(const Parameters& params, int p);

/// The integrand itself in (d, h, t), expanded from its defining expression
/// and truncated to h-degree <= n. Used as an independent check of A.
SparseSeries build_f(const Parameters& params);

/// s_j(t_1 ... t_kappa) as a series of arity kappa (zero when j > kappa).
SparseSeries elementary_symmetric_series(int kappa, int j);

/// (d h + t_1) ... (d h + t_kappa) f, arity kappa + 2, h-degree <= n.
SparseSeries build_A(const Parameters& params);

/// [d^(n-p)] A assembled from alpha/beta and f, arity kappa + 1 (h, t).
SparseSeries build_A_p(const Parameters& params, int p);

/// [t^e](f_r s_m) for a t-exponent e, by the multinomial closed form.
/// Integer-valued; used for on-demand coefficient access.
Integer fs_coefficient(const Parameters& params, int r, int m, std::span<const int> e);
/// Same without the f_prefactor: sum over m-subsets S of multinomial(e - 1_S)
/// prod a^(e - 1_S).
Integer fs_coefficient_reduced(const Parameters& params, int r, int m, std::span<const int> e);

/// B truncated to the policy, arity kappa + 1 (h, t). The h window must be
/// bounded above.
SparseSeries build_B_truncated(const Parameters& params, const TruncationPolicy& policy);

/// C truncated to the policy (arity kappa). The policy must carry a weighted
/// cap with weights (kappa - i); exponent windows translate into caps on the
/// prefix sums m_i = k_1 + ... + k_i, which are the u-exponents.
SparseSeries build_C_truncated(const Parameters& params, const TruncationPolicy& policy);
SparseSeries build_C_truncated(int kappa, const TruncationPolicy& policy);

/// C expanded in u_i = t_i / t_{i+1} (arity kappa - 1) with u_i-degree at
/// most prefix_caps[i] and total degree at most total_cap, exact there.
SparseSeries build_C_in_u(int kappa, std::span<const long> prefix_caps, long total_cap);
/// Same series with coefficients replaced by the majorant (coefficients of
/// the factor expansions taken in absolute value before multiplying).
SparseSeries build_C_majorant_in_u(int kappa, std::span<const long> prefix_caps, long total_cap);

/// Integer-coefficient dense form of C in u, indexed by the mixed radix of
/// (prefix_caps[i] + 1). Exposed for the intersection engine.
struct DenseUSeries {
    std::vector<long> caps;
    std::vector<std::size_t> stride;
    std::vector<Integer> coeff;
    long total_cap = 0;

    std::size_t index(std::span<const long> m) const;
    std::size_t size() const { return coeff.size(); }
};
DenseUSeries build_C_dense(int kappa, std::span<const long> prefix_caps, long total_cap, bool majorant = false);

/// Term count of the dense box implied by the caps, with saturation.
std::size_t dense_box_size(std::span<const long> prefix_caps);

/// u-exponents (m_1 .. m_{kappa-1}) to t-exponents k.
ExponentVector u_to_t(const ExponentVector& m);
/// Inverse on homogeneous exponents; throws if k is not of degree 0.
ExponentVector t_to_u(const ExponentVector& k);

/// Prefix caps implied by t-windows: min(sum_{l<=i} hi_l, -sum_{l>i} lo_l).
std::vector<long> prefix_caps_from_windows(std::span<const Window> t_windows);

/// Windows used for exact I(d): k_i in [n - n_kappa - 1, 2 n], cap = sum of
/// the implied prefix caps. Arity kappa.
TruncationPolicy default_C_policy(const Parameters& params);

/// Evaluations at rational points. The point gives t_1 .. t_kappa. Every
/// expanded ratio must lie strictly inside the convergence domain of its
/// expansion; a point outside raises std::domain_error.
Rational eval_C_at(int kappa, std::span<const Rational> t);
Rational eval_absC_at(int kappa, std::span<const Rational> t);
/// The point t_i = 1 / a_i.
Rational eval_C_at(const Parameters& params);
Rational eval_absC_at(const Parameters& params);

/// prod (1 - x_i)^-(n+1) with x_i = h / t_i; requires |x_i| < 1.
Rational eval_absB_at(int n, std::span<const Rational> x);
/// The scaled point x_i = a_i / (2 n mu).
Rational eval_absB_at(const Parameters& params);

}  // namespace hyperbound

#endif  // HYPERBOUND_INTEGRAND_HPP
