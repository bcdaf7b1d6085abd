#include "hyperbound/rootfind.hpp"

#include <stdexcept>

namespace hyperbound {

UPoly::UPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

UPoly UPoly::from_descending(const std::vector<Rational>& descending) {
    return UPoly(std::vector<Rational>(descending.rbegin(), descending.rend()));
}

UPoly UPoly::from(const IntersectionPolynomial& poly) { return from_descending(poly.raw()); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UPoly::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

Rational UPoly::eval(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

UPoly UPoly::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (c_.empty()) return *this;
    std::vector<Rational> d(c_);
    const Rational lead = c_.back();
    for (auto& x : d) x /= lead;
    return UPoly(std::move(d));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a) {
    std::vector<Rational> r(a.c_);
    for (auto& x : r) x = -x;
    return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem(a.coefficients());
    const int db = b.degree();
    if (a.degree() < db) return {UPoly(), a};
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
    const Rational& lb = b.leading();
    for (int k = a.degree() - db; k >= 0; --k) {
        const Rational f = rem[static_cast<std::size_t>(k + db)] / lb;
        quo[static_cast<std::size_t>(k)] = f;
        if (f == 0) continue;
        for (int i = 0; i <= db; ++i) {
            rem[static_cast<std::size_t>(k + i)] -= f * b.coefficients()[static_cast<std::size_t>(i)];
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p;
    return divmod(p, gcd(p, p.derivative())).first;
}

SturmChain::SturmChain(const UPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
    chain_.push_back(squarefree_part(p));
    if (chain_[0].degree() == 0) return;
    chain_.push_back(chain_[0].derivative());
    while (true) {
        UPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
        if (r.is_zero()) break;
        // Positive rescaling keeps every sign and tames coefficient growth.
        Rational lead = abs(r.leading());
        UPoly scaled = -r;
        std::vector<Rational> c(scaled.coefficients());
        for (auto& x : c) x /= lead;
        chain_.push_back(UPoly(std::move(c)));
    }
}

namespace {

int count_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int SturmChain::variations(const Rational& x) const {
    std::vector<int> s;
    for (const auto& p : chain_) s.push_back(p.sign_at(x));
    return count_changes(s);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<int> s;
    for (const auto& p : chain_) s.push_back(sgn(p.leading()));
    return count_changes(s);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<int> s;
    for (const auto& p : chain_) s.push_back(p.degree() % 2 == 0 ? sgn(p.leading()) : -sgn(p.leading()));
    return count_changes(s);
}

int root_count(const SturmChain& chain, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("root_count needs lo < hi");
    return chain.variations(lo) - chain.variations(hi);
}

int count_above(const SturmChain& chain, const Rational& x) {
    return chain.variations(x) - chain.variations_at_pos_inf();
}

int count_real_roots(const SturmChain& chain) {
    return chain.variations_at_neg_inf() - chain.variations_at_pos_inf();
}

Integer fujiwara_bound(const UPoly& p) {
    if (p.is_zero()) throw std::domain_error("root bound of the zero polynomial");
    const int n = p.degree();
    const Rational& lead = p.leading();
    Integer m = 1;
    for (int k = 1; k <= n; ++k) {
        const Rational& c = p.coefficients()[static_cast<std::size_t>(n - k)];
        if (c == 0) continue;
        const Rational target = pow(Rational(2), k) * abs(Rational(c / lead));
        const Integer r = ceil_root(target, static_cast<unsigned long>(k));
        if (r > m) m = r;
    }
    return m;
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p, const Rational& max_width) {
    if (!(max_width > 0)) throw std::invalid_argument("isolation width must be positive");
    const SturmChain chain(p);
    const Rational m(fujiwara_bound(p));
    std::vector<std::pair<Rational, Rational>> out;
    std::vector<std::pair<Rational, Rational>> stack{{-m - 1, m}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const int c = root_count(chain, a, b);
        if (c == 0) continue;
        if (c == 1 && b - a <= max_width) {
            out.emplace_back(a, b);
            continue;
        }
        const Rational mid = (a + b) / 2;
        // Push the upper half first so that output is in increasing order.
        stack.emplace_back(mid, b);
        stack.emplace_back(a, mid);
    }
    return out;
}

namespace {

// Smallest integer x in [0, hi] with no root in (x, hi].
Integer root_free_floor(const SturmChain& chain, const Integer& hi) {
    if (hi <= 0) return 0;
    if (root_count(chain, Rational(0), Rational(hi)) == 0) return 0;
    Integer lo = 0, up = hi;  // count(lo, hi) > 0, count(up, hi) = 0
    while (up - lo > 1) {
        const Integer mid = (lo + up) / 2;
        if (root_count(chain, Rational(mid), Rational(hi)) == 0) {
            up = mid;
        } else {
            lo = mid;
        }
    }
    return up;
}

}  // namespace

Integer minimal_positive_degree(const UPoly& p) {
    if (p.is_zero() || p.leading() <= 0) {
        throw std::domain_error("minimal degree needs a positive leading coefficient");
    }
    const SturmChain chain(p);
    const Integer bound = fujiwara_bound(p);
    auto next_threshold = [&](const Integer& hi) -> Integer {
        const Integer x = root_free_floor(chain, hi);
        if (x == 0) return 1;
        return p.sign_at(Rational(x)) == 0 ? Integer(x + 1) : x;
    };
    Integer d = next_threshold(bound);
    // Integers between roots may still be positive; step past such gaps.
    while (d > 1 && p.sign_at(Rational(d - 1)) > 0) d = next_threshold(d - 1);
    return d;
}

Integer minimal_positive_degree(const IntersectionPolynomial& poly) {
    return minimal_positive_degree(UPoly::from(poly));
}

}  // namespace hyperbound
