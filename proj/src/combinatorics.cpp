#include "hyperbound/combinatorics.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace hyperbound {

Integer factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer binomial(long n, long k) {
    if (n < 0) throw std::invalid_argument("binomial with negative top");
    if (k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer multinomial(long total, std::span<const long> parts) {
    long sum = 0;
    for (long p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        sum += p;
    }
    if (total < 0) throw std::invalid_argument("multinomial: negative total");
    if (sum != total) {
        throw std::invalid_argument("multinomial: parts sum to " + std::to_string(sum) +
                                    ", expected " + std::to_string(total));
    }
    // Product of binomials avoids the large intermediate total!.
    Integer r = 1;
    long running = 0;
    for (long p : parts) {
        running += p;
        r *= binomial(running, p);
    }
    return r;
}

std::vector<Rational> elementary_symmetric_all(std::span<const Rational> xs) {
    std::vector<Rational> e(xs.size() + 1, Rational(0));
    e[0] = 1;
    for (std::size_t m = 0; m < xs.size(); ++m) {
        for (std::size_t j = m + 1; j >= 1; --j) e[j] += xs[m] * e[j - 1];
    }
    return e;
}

Rational elementary_symmetric(std::size_t j, std::span<const Rational> xs) {
    if (j > xs.size()) {
        throw std::out_of_range("elementary_symmetric: degree " + std::to_string(j) +
                                " exceeds " + std::to_string(xs.size()) + " variables");
    }
    std::vector<Rational> e(j + 1, Rational(0));
    e[0] = 1;
    for (std::size_t m = 0; m < xs.size(); ++m) {
        const std::size_t top = std::min(j, m + 1);
        for (std::size_t i = top; i >= 1; --i) e[i] += xs[m] * e[i - 1];
    }
    return e[j];
}

WeightVector::WeightVector(std::vector<Integer> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("weight vector is empty");
    for (const auto& a : entries_) {
        if (a <= 0) throw std::invalid_argument("weights must be strictly positive");
    }
    nef_ok_ = true;
    for (std::size_t i = 0; i + 1 < entries_.size(); ++i) {
        if (entries_[i] < 3 * entries_[i + 1]) nef_ok_ = false;
    }
}

std::vector<Rational> WeightVector::as_rationals() const {
    return {entries_.begin(), entries_.end()};
}

Integer mu_weighted(const WeightVector& a) {
    Integer mu = 0;
    for (std::size_t i = 0; i < a.size(); ++i) mu += Integer(static_cast<long>(i + 1)) * a[i];
    return mu;
}

}  // namespace hyperbound
