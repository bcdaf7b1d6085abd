#ifndef HYPERBOUND_COMBINATORICS_HPP
#define HYPERBOUND_COMBINATORICS_HPP

#include <span>
#include <vector>

#include "hyperbound/rational.hpp"

namespace hyperbound {

Integer factorial(long n);
Integer binomial(long n, long k);

/// total! / (parts[0]! * parts[1]! * ...). Throws std::invalid_argument on a
/// negative entry or when the parts do not sum to total.
Integer multinomial(long total, std::span<const long> parts);

/// j-th elementary symmetric function of xs. j > xs.size() is an error
/// rather than zero, so that index slips surface immediately.
Rational elementary_symmetric(std::size_t j, std::span<const Rational> xs);

/// All of e_0 ... e_len at once, by the one-variable-at-a-time recurrence.
std::vector<Rational> elementary_symmetric_all(std::span<const Rational> xs);

/// Weights a_1 ... a_kappa of the tower line bundle. Entries are strictly
/// positive integers.
class WeightVector {
public:
    explicit WeightVector(std::vector<Integer> entries);

    std::size_t size() const { return entries_.size(); }
    const Integer& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Integer>& entries() const { return entries_; }

    /// a_i >= 3 a_{i+1} > 0 for every consecutive pair.
    bool nef_ok() const { return nef_ok_; }

    std::vector<Rational> as_rationals() const;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<Integer> entries_;
    bool nef_ok_ = false;
};

/// 1 a_1 + 2 a_2 + ... + kappa a_kappa.
Integer mu_weighted(const WeightVector& a);

/// Calls f(span<const int>) for every vector of `parts` nonnegative integers
/// summing to `total`, in lexicographically decreasing order.
template <class F>
void for_each_composition(int total, std::size_t parts, F&& f) {
    if (parts == 0) {
        if (total == 0) f(std::span<const int>{});
        return;
    }
    std::vector<int> x(parts, 0);
    auto rec = [&](auto& self, std::size_t pos, int left) -> void {
        if (pos + 1 == parts) {
            x[pos] = left;
            f(std::span<const int>(x));
            return;
        }
        for (int v = left; v >= 0; --v) {
            x[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (total >= 0) rec(rec, 0, total);
}

/// Calls f(span<const int>) with the sorted indices of every m-subset of
/// {0 .. size-1}.
template <class F>
void for_each_subset(std::size_t size, std::size_t m, F&& f) {
    if (m > size) return;
    std::vector<int> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = static_cast<int>(i);
    while (true) {
        f(std::span<const int>(idx));
        std::size_t i = m;
        while (i > 0 && idx[i - 1] == static_cast<int>(size - m + i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t k = i; k < m; ++k) idx[k] = idx[k - 1] + 1;
    }
}

}  // namespace hyperbound

#endif  // HYPERBOUND_COMBINATORICS_HPP
