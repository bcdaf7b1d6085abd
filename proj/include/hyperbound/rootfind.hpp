#ifndef HYPERBOUND_ROOTFIND_HPP
#define HYPERBOUND_ROOTFIND_HPP

#include <utility>
#include <vector>

#include "hyperbound/intersection.hpp"
#include "hyperbound/rational.hpp"

namespace hyperbound {

/// Univariate polynomial with rational coefficients, stored in ascending
/// order with no trailing zeros (the zero polynomial is empty).
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> ascending);
    static UPoly from_descending(const std::vector<Rational>& descending);
    static UPoly from(const IntersectionPolynomial& poly);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& leading() const;
    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const { return sgn(eval(x)); }
    UPoly derivative() const;
    UPoly monic() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a);
    friend bool operator==(const UPoly&, const UPoly&) = default;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Quotient and remainder; throws std::domain_error on a zero divisor.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// p / gcd(p, p'), same roots without multiplicity.
UPoly squarefree_part(const UPoly& p);

class SturmChain {
public:
    /// Throws std::invalid_argument for the zero polynomial.
    explicit SturmChain(const UPoly& p);
    const std::vector<UPoly>& polys() const { return chain_; }
    /// Sign variations at x, zeros dropped.
    int variations(const Rational& x) const;
    int variations_at_pos_inf() const;
    int variations_at_neg_inf() const;

private:
    std::vector<UPoly> chain_;
};

/// Distinct real roots in (lo, hi]. Requires lo < hi.
int root_count(const SturmChain& chain, const Rational& lo, const Rational& hi);
/// Distinct real roots in (x, +inf).
int count_above(const SturmChain& chain, const Rational& x);
int count_real_roots(const SturmChain& chain);

/// Smallest integer M >= 1 with M^p >= 2^p |c_p / c_0| for every p, where
/// c_0 is the leading coefficient; every real root has |r| <= M. Throws on
/// the zero polynomial.
Integer fujiwara_bound(const UPoly& p);

/// Disjoint half-open intervals (a, b], one per distinct real root, each of
/// width at most max_width, inside (-M - 1, M] for the Fujiwara bound M.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p, const Rational& max_width);

/// Smallest positive integer d0 with p(d) > 0 for every integer d >= d0.
/// Requires a positive leading coefficient (std::domain_error otherwise).
Integer minimal_positive_degree(const UPoly& p);
Integer minimal_positive_degree(const IntersectionPolynomial& poly);

}  // namespace hyperbound

#endif  // HYPERBOUND_ROOTFIND_HPP
