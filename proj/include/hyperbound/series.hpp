#ifndef HYPERBOUND_SERIES_HPP
#define HYPERBOUND_SERIES_HPP

// Sparse multivariate Laurent polynomials with exact rational coefficients,
// and window-truncated products used to handle infinite series exactly
// within a requested region of exponents.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperbound/rational.hpp"

namespace hyperbound {

class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t arity) : e_(arity, 0) {}
    ExponentVector(std::initializer_list<int> e) : e_(e) {}
    explicit ExponentVector(std::vector<int> e) : e_(std::move(e)) {}

    std::size_t arity() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    int& operator[](std::size_t i) { return e_[i]; }
    std::span<const int> values() const { return e_; }

    /// Sum of all entries.
    long total() const;

    ExponentVector operator+(const ExponentVector& o) const;
    ExponentVector operator-(const ExponentVector& o) const;

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
    friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

    std::string to_string() const;

private:
    std::vector<int> e_;
};

struct ExponentVectorHash {
    std::size_t operator()(const ExponentVector& e) const noexcept;
};

struct Term {
    ExponentVector exponent;
    Rational coeff;
};

/// Inclusive exponent interval for one variable.
struct Window {
    long lo;
    long hi;
};

/// Linear functional sum_v w_v e_v bounded above by cap.
struct WeightedCap {
    std::vector<long> weights;
    long cap;
};

inline constexpr long kUnbounded = 1L << 40;

/// Admissible region for truncated products: every exponent inside its
/// window and, when present, the weighted degree at most the cap.
class TruncationPolicy {
public:
    static TruncationPolicy unbounded(std::size_t arity);

    TruncationPolicy& window(std::size_t var, long lo, long hi);
    TruncationPolicy& weighted_cap(std::vector<long> weights, long cap);

    std::size_t arity() const { return windows_.size(); }
    const Window& window_of(std::size_t var) const { return windows_[var]; }
    const std::vector<Window>& windows() const { return windows_; }
    const std::optional<WeightedCap>& cap() const { return cap_; }

    bool admissible(const ExponentVector& e) const;

private:
    explicit TruncationPolicy(std::size_t arity);
    std::vector<Window> windows_;
    std::optional<WeightedCap> cap_;
};

/// Exponent ranges that a factor (or the product of all factors still to be
/// multiplied in) can contribute. Used to prune intermediate terms that can
/// no longer land in the admissible region. The default, exact_one(), is the
/// range of the constant series 1: only the final filter applies.
struct ExponentRange {
    std::vector<long> lo;
    std::vector<long> hi;

    static ExponentRange exact_one(std::size_t arity);
    ExponentRange operator+(const ExponentRange& o) const;
    /// Lower bound of sum_v w_v e_v over the box.
    long weighted_min(std::span<const long> weights) const;
};

class SparseSeries {
public:
    explicit SparseSeries(std::size_t arity = 0) : arity_(arity) {}

    /// Merges duplicate exponents, drops zero coefficients, sorts.
    static SparseSeries from_terms(std::size_t arity, std::vector<Term> terms);
    static SparseSeries monomial(const ExponentVector& e, const Rational& c = 1);
    static SparseSeries constant(std::size_t arity, const Rational& c);

    std::size_t arity() const { return arity_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    std::span<const Term> terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Rational coefficient(const ExponentVector& e) const;

    /// Exponent box of the support. Requires a nonzero series.
    ExponentRange range() const;

    SparseSeries operator-() const;
    SparseSeries& operator*=(const Rational& c);
    friend SparseSeries operator*(const Rational& c, SparseSeries x) { return x *= c; }

    /// Coefficient of var^value, as a series in the remaining variables.
    SparseSeries slice(std::size_t var, int value) const;

    /// Applies an exponent map (which must be injective on the support) and
    /// returns a series of the given arity.
    SparseSeries map_exponents(std::size_t new_arity,
                               const std::function<ExponentVector(const ExponentVector&)>& f) const;

    /// Terms whose exponent satisfies the predicate.
    SparseSeries filter(const std::function<bool(const ExponentVector&)>& keep) const;
    SparseSeries filter(const TruncationPolicy& policy) const;

    friend bool operator==(const SparseSeries&, const SparseSeries&);

    std::string to_string() const;

private:
    std::size_t arity_;
    std::vector<Term> terms_;  // sorted by exponent, no zero coefficients
};

SparseSeries series_add(const SparseSeries& x, const SparseSeries& y);
SparseSeries series_sub(const SparseSeries& x, const SparseSeries& y);
inline SparseSeries operator+(const SparseSeries& x, const SparseSeries& y) { return series_add(x, y); }
inline SparseSeries operator-(const SparseSeries& x, const SparseSeries& y) { return series_sub(x, y); }

/// Full finite product.
SparseSeries series_mul(const SparseSeries& x, const SparseSeries& y);

/// Product restricted to policy-admissible terms. `remaining` bounds what the
/// factors still to be multiplied in can add; intermediate terms which cannot
/// reach the admissible region even then are discarded.
SparseSeries series_mul(const SparseSeries& x, const SparseSeries& y, const TruncationPolicy& policy,
                        const ExponentRange& remaining);
SparseSeries series_mul(const SparseSeries& x, const SparseSeries& y, const TruncationPolicy& policy);

/// Left-to-right product of all factors, pruning each partial product with
/// the exponent range of the factors not yet multiplied.
SparseSeries product_chain(std::span<const SparseSeries> factors, const TruncationPolicy& policy);

SparseSeries series_pow(const SparseSeries& x, unsigned exponent);
SparseSeries series_pow(const SparseSeries& x, unsigned exponent, const TruncationPolicy& policy);

inline Rational coefficient_of(const SparseSeries& x, const ExponentVector& e) { return x.coefficient(e); }

/// sum_i (kappa - i) k_i for k = (k_1 ... k_kappa): the total degree in the
/// ratio variables u_i = t_i / t_{i+1}.
long weighted_length(std::span<const int> k);
inline long weighted_length(const ExponentVector& k) { return weighted_length(k.values()); }

std::vector<long> weighted_length_weights(std::size_t kappa);

}  // namespace hyperbound

#endif  // HYPERBOUND_SERIES_HPP
