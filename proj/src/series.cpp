#include "hyperbound/series.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hyperbound {

namespace {

void require_same_arity(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": arity mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

long clamp_add(long a, long b) {
    const long s = a + b;
    if (s > kUnbounded) return kUnbounded;
    if (s < -kUnbounded) return -kUnbounded;
    return s;
}

long weighted_value(std::span<const long> w, const ExponentVector& e) {
    long s = 0;
    for (std::size_t v = 0; v < w.size(); ++v) s += w[v] * e[v];
    return s;
}

bool by_exponent(const Term& a, const Term& b) { return a.exponent < b.exponent; }

// Mixed-radix packing of exponents inside a known box into one 64-bit key.
class Packer {
public:
    Packer(const std::vector<long>& lo, const std::vector<long>& hi) : lo_(lo) {
        radix_.resize(lo.size());
        unsigned __int128 span = 1;
        for (std::size_t v = 0; v < lo.size(); ++v) {
            const unsigned __int128 width = static_cast<unsigned __int128>(hi[v] - lo[v] + 1);
            radix_[v] = static_cast<std::uint64_t>(span);
            span *= width;
            if (span > std::numeric_limits<std::uint64_t>::max() / 2) {
                ok_ = false;
                return;
            }
        }
        ok_ = true;
        hi_ = hi;
    }
    bool ok() const { return ok_; }
    std::uint64_t pack(const ExponentVector& e) const {
        std::uint64_t k = 0;
        for (std::size_t v = 0; v < lo_.size(); ++v) k += static_cast<std::uint64_t>(e[v] - lo_[v]) * radix_[v];
        return k;
    }
    ExponentVector unpack(std::uint64_t k) const {
        ExponentVector e(lo_.size());
        for (std::size_t v = lo_.size(); v-- > 0;) {
            e[v] = static_cast<int>(static_cast<long>(k / radix_[v]) + lo_[v]);
            k %= radix_[v];
        }
        return e;
    }

private:
    std::vector<long> lo_;
    std::vector<long> hi_;
    std::vector<std::uint64_t> radix_;
    bool ok_ = false;
};

struct Acceptance {
    std::vector<long> lo;  // admissible box for partial products
    std::vector<long> hi;
    std::optional<std::vector<long>> weights;
    long weighted_cap = 0;  // already reduced by the remaining-factor minimum

    bool accepts(const ExponentVector& e) const {
        for (std::size_t v = 0; v < lo.size(); ++v) {
            if (e[v] < lo[v] || e[v] > hi[v]) return false;
        }
        return !weights || weighted_value(*weights, e) <= weighted_cap;
    }
};

SparseSeries multiply_impl(const SparseSeries& x, const SparseSeries& y, const Acceptance* acc) {
    require_same_arity(x.arity(), y.arity(), "series_mul");
    const std::size_t n = x.arity();
    if (x.is_zero() || y.is_zero()) return SparseSeries(n);

    const ExponentRange xr = x.range();
    const ExponentRange yr = y.range();
    std::vector<long> box_lo(n), box_hi(n);
    for (std::size_t v = 0; v < n; ++v) {
        box_lo[v] = xr.lo[v] + yr.lo[v];
        box_hi[v] = xr.hi[v] + yr.hi[v];
        if (acc) {
            box_lo[v] = std::max(box_lo[v], acc->lo[v]);
            box_hi[v] = std::min(box_hi[v], acc->hi[v]);
            if (box_lo[v] > box_hi[v]) return SparseSeries(n);
        }
    }
    long y_weighted_min = 0;
    if (acc && acc->weights) y_weighted_min = yr.weighted_min(*acc->weights);

    // Skip x terms which cannot meet any admissible partner.
    auto x_viable = [&](const ExponentVector& e) {
        if (!acc) return true;
        for (std::size_t v = 0; v < n; ++v) {
            if (e[v] + yr.lo[v] > acc->hi[v] || e[v] + yr.hi[v] < acc->lo[v]) return false;
        }
        return !acc->weights || weighted_value(*acc->weights, e) + y_weighted_min <= acc->weighted_cap;
    };

    std::vector<Term> out;
    ExponentVector e(n);
    Rational prod;
    const Packer packer(box_lo, box_hi);
    if (packer.ok()) {
        std::unordered_map<std::uint64_t, Rational> acc_map;
        acc_map.reserve(std::min<std::size_t>(x.size() * y.size(), 1u << 20));
        for (const auto& tx : x) {
            if (!x_viable(tx.exponent)) continue;
            for (const auto& ty : y) {
                for (std::size_t v = 0; v < n; ++v) e[v] = tx.exponent[v] + ty.exponent[v];
                if (acc && !acc->accepts(e)) continue;
                prod = tx.coeff * ty.coeff;
                acc_map[packer.pack(e)] += prod;
            }
        }
        out.reserve(acc_map.size());
        for (auto& [k, c] : acc_map) {
            if (c != 0) out.push_back({packer.unpack(k), std::move(c)});
        }
    } else {
        std::unordered_map<ExponentVector, Rational, ExponentVectorHash> acc_map;
        for (const auto& tx : x) {
            if (!x_viable(tx.exponent)) continue;
            for (const auto& ty : y) {
                for (std::size_t v = 0; v < n; ++v) e[v] = tx.exponent[v] + ty.exponent[v];
                if (acc && !acc->accepts(e)) continue;
                acc_map[e] += tx.coeff * ty.coeff;
            }
        }
        out.reserve(acc_map.size());
        for (auto& [k, c] : acc_map) {
            if (c != 0) out.push_back({k, std::move(c)});
        }
    }
    std::sort(out.begin(), out.end(), by_exponent);
    return SparseSeries::from_terms(n, std::move(out));
}

Acceptance make_acceptance(const TruncationPolicy& policy, const ExponentRange& remaining) {
    const std::size_t n = policy.arity();
    require_same_arity(n, remaining.lo.size(), "series_mul hint");
    Acceptance acc;
    acc.lo.resize(n);
    acc.hi.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        acc.lo[v] = clamp_add(policy.window_of(v).lo, -remaining.hi[v]);
        acc.hi[v] = clamp_add(policy.window_of(v).hi, -remaining.lo[v]);
    }
    if (const auto& cap = policy.cap()) {
        acc.weights = cap->weights;
        acc.weighted_cap = clamp_add(cap->cap, -remaining.weighted_min(cap->weights));
    }
    return acc;
}

}  // namespace

long ExponentVector::total() const {
    long s = 0;
    for (int x : e_) s += x;
    return s;
}

ExponentVector ExponentVector::operator+(const ExponentVector& o) const {
    require_same_arity(arity(), o.arity(), "exponent sum");
    ExponentVector r(arity());
    for (std::size_t i = 0; i < arity(); ++i) r[i] = e_[i] + o[i];
    return r;
}

ExponentVector ExponentVector::operator-(const ExponentVector& o) const {
    require_same_arity(arity(), o.arity(), "exponent difference");
    ExponentVector r(arity());
    for (std::size_t i = 0; i < arity(); ++i) r[i] = e_[i] - o[i];
    return r;
}

std::string ExponentVector::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e_.size(); ++i) os << (i ? "," : "") << e_[i];
    os << ')';
    return os.str();
}

std::size_t ExponentVectorHash::operator()(const ExponentVector& e) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int x : e.values()) {
        h ^= static_cast<std::uint32_t>(x);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

TruncationPolicy::TruncationPolicy(std::size_t arity) : windows_(arity, Window{-kUnbounded, kUnbounded}) {}

TruncationPolicy TruncationPolicy::unbounded(std::size_t arity) { return TruncationPolicy(arity); }

TruncationPolicy& TruncationPolicy::window(std::size_t var, long lo, long hi) {
    if (var >= windows_.size()) throw std::out_of_range("truncation window: variable out of range");
    if (lo > hi) throw std::invalid_argument("truncation window: lo > hi");
    windows_[var] = Window{lo, hi};
    return *this;
}

TruncationPolicy& TruncationPolicy::weighted_cap(std::vector<long> weights, long cap) {
    require_same_arity(weights.size(), windows_.size(), "weighted cap");
    cap_ = WeightedCap{std::move(weights), cap};
    return *this;
}

bool TruncationPolicy::admissible(const ExponentVector& e) const {
    require_same_arity(e.arity(), windows_.size(), "admissible");
    for (std::size_t v = 0; v < windows_.size(); ++v) {
        if (e[v] < windows_[v].lo || e[v] > windows_[v].hi) return false;
    }
    return !cap_ || weighted_value(cap_->weights, e) <= cap_->cap;
}

ExponentRange ExponentRange::exact_one(std::size_t arity) {
    return {std::vector<long>(arity, 0), std::vector<long>(arity, 0)};
}

ExponentRange ExponentRange::operator+(const ExponentRange& o) const {
    require_same_arity(lo.size(), o.lo.size(), "range sum");
    ExponentRange r{lo, hi};
    for (std::size_t v = 0; v < lo.size(); ++v) {
        r.lo[v] = clamp_add(lo[v], o.lo[v]);
        r.hi[v] = clamp_add(hi[v], o.hi[v]);
    }
    return r;
}

long ExponentRange::weighted_min(std::span<const long> weights) const {
    long s = 0;
    for (std::size_t v = 0; v < weights.size(); ++v) {
        const long w = weights[v];
        if (w == 0) continue;
        const long b = w > 0 ? lo[v] : hi[v];
        if (b <= -kUnbounded || b >= kUnbounded) return -kUnbounded;
        s = clamp_add(s, w * b);
    }
    return s;
}

SparseSeries SparseSeries::from_terms(std::size_t arity, std::vector<Term> terms) {
    for (const auto& t : terms) require_same_arity(arity, t.exponent.arity(), "from_terms");
    if (!std::is_sorted(terms.begin(), terms.end(), by_exponent)) {
        std::sort(terms.begin(), terms.end(), by_exponent);
    }
    SparseSeries s(arity);
    s.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!s.terms_.empty() && s.terms_.back().exponent == t.exponent) {
            s.terms_.back().coeff += t.coeff;
        } else {
            if (!s.terms_.empty() && s.terms_.back().coeff == 0) s.terms_.pop_back();
            s.terms_.push_back(std::move(t));
        }
    }
    if (!s.terms_.empty() && s.terms_.back().coeff == 0) s.terms_.pop_back();
    return s;
}

SparseSeries SparseSeries::monomial(const ExponentVector& e, const Rational& c) {
    SparseSeries s(e.arity());
    if (c != 0) s.terms_.push_back({e, c});
    return s;
}

SparseSeries SparseSeries::constant(std::size_t arity, const Rational& c) {
    return monomial(ExponentVector(arity), c);
}

Rational SparseSeries::coefficient(const ExponentVector& e) const {
    require_same_arity(arity_, e.arity(), "coefficient");
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                     [](const Term& t, const ExponentVector& k) { return t.exponent < k; });
    if (it != terms_.end() && it->exponent == e) return it->coeff;
    return 0;
}

ExponentRange SparseSeries::range() const {
    if (terms_.empty()) throw std::logic_error("exponent range of the zero series");
    ExponentRange r{std::vector<long>(arity_, kUnbounded), std::vector<long>(arity_, -kUnbounded)};
    for (const auto& t : terms_) {
        for (std::size_t v = 0; v < arity_; ++v) {
            r.lo[v] = std::min<long>(r.lo[v], t.exponent[v]);
            r.hi[v] = std::max<long>(r.hi[v], t.exponent[v]);
        }
    }
    return r;
}

SparseSeries SparseSeries::operator-() const {
    SparseSeries r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

SparseSeries& SparseSeries::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

SparseSeries SparseSeries::slice(std::size_t var, int value) const {
    if (var >= arity_) throw std::out_of_range("slice: variable out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.exponent[var] != value) continue;
        std::vector<int> e;
        e.reserve(arity_ - 1);
        for (std::size_t v = 0; v < arity_; ++v) {
            if (v != var) e.push_back(t.exponent[v]);
        }
        out.push_back({ExponentVector(std::move(e)), t.coeff});
    }
    return from_terms(arity_ - 1, std::move(out));
}

SparseSeries SparseSeries::map_exponents(std::size_t new_arity,
                                         const std::function<ExponentVector(const ExponentVector&)>& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({f(t.exponent), t.coeff});
    const std::size_t before = out.size();
    SparseSeries r = from_terms(new_arity, std::move(out));
    if (r.size() != before) {
        // Collisions merged terms, possibly to zero; the map was not injective.
        std::map<ExponentVector, int> seen;
        for (const auto& t : terms_) {
            if (++seen[f(t.exponent)] > 1) throw std::invalid_argument("map_exponents: map is not injective");
        }
    }
    return r;
}

SparseSeries SparseSeries::filter(const std::function<bool(const ExponentVector&)>& keep) const {
    SparseSeries r(arity_);
    for (const auto& t : terms_) {
        if (keep(t.exponent)) r.terms_.push_back(t);
    }
    return r;
}

SparseSeries SparseSeries::filter(const TruncationPolicy& policy) const {
    require_same_arity(arity_, policy.arity(), "filter");
    return filter([&](const ExponentVector& e) { return policy.admissible(e); });
}

bool operator==(const SparseSeries& x, const SparseSeries& y) {
    if (x.arity_ != y.arity_ || x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i) {
        if (x.terms_[i].exponent != y.terms_[i].exponent || x.terms_[i].coeff != y.terms_[i].coeff) return false;
    }
    return true;
}

std::string SparseSeries::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << hyperbound::to_string(t.coeff) << "*" << t.exponent.to_string();
    }
    return os.str();
}

SparseSeries series_add(const SparseSeries& x, const SparseSeries& y) {
    require_same_arity(x.arity(), y.arity(), "series_add");
    std::vector<Term> all;
    all.reserve(x.size() + y.size());
    std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(all), by_exponent);
    return SparseSeries::from_terms(x.arity(), std::move(all));
}

SparseSeries series_sub(const SparseSeries& x, const SparseSeries& y) { return series_add(x, -y); }

SparseSeries series_mul(const SparseSeries& x, const SparseSeries& y) { return multiply_impl(x, y, nullptr); }

SparseSeries series_mul(const SparseSeries& x, const SparseSeries& y, const TruncationPolicy& policy,
                        const ExponentRange& remaining) {
    require_same_arity(x.arity(), policy.arity(), "series_mul policy");
    const Acceptance acc = make_acceptance(policy, remaining);
    return multiply_impl(x, y, &acc);
}

SparseSeries series_mul(const SparseSeries& x, const SparseSeries& y, const TruncationPolicy& policy) {
    return series_mul(x, y, policy, ExponentRange::exact_one(policy.arity()));
}

SparseSeries product_chain(std::span<const SparseSeries> factors, const TruncationPolicy& policy) {
    const std::size_t n = policy.arity();
    if (factors.empty()) return SparseSeries::constant(n, 1);
    for (const auto& f : factors) {
        require_same_arity(n, f.arity(), "product_chain");
        if (f.is_zero()) return SparseSeries(n);
    }
    // suffix[i] bounds the product of factors[i..].
    std::vector<ExponentRange> suffix(factors.size() + 1, ExponentRange::exact_one(n));
    for (std::size_t i = factors.size(); i-- > 0;) suffix[i] = factors[i].range() + suffix[i + 1];

    const Acceptance first = make_acceptance(policy, suffix[1]);
    SparseSeries acc = factors[0].filter([&](const ExponentVector& e) { return first.accepts(e); });
    for (std::size_t i = 1; i < factors.size(); ++i) {
        acc = series_mul(acc, factors[i], policy, suffix[i + 1]);
        if (acc.is_zero()) break;
    }
    return acc;
}

SparseSeries series_pow(const SparseSeries& x, unsigned exponent) {
    SparseSeries r = SparseSeries::constant(x.arity(), 1);
    for (unsigned i = 0; i < exponent; ++i) r = series_mul(r, x);
    return r;
}

SparseSeries series_pow(const SparseSeries& x, unsigned exponent, const TruncationPolicy& policy) {
    if (exponent == 0) return SparseSeries::constant(x.arity(), 1).filter(policy);
    std::vector<SparseSeries> copies(exponent, x);
    return product_chain(copies, policy);
}

long weighted_length(std::span<const int> k) {
    const long kappa = static_cast<long>(k.size());
    long s = 0;
    for (long i = 1; i <= kappa; ++i) s += (kappa - i) * k[static_cast<std::size_t>(i - 1)];
    return s;
}

std::vector<long> weighted_length_weights(std::size_t kappa) {
    std::vector<long> w(kappa);
    for (std::size_t i = 0; i < kappa; ++i) w[i] = static_cast<long>(kappa - 1 - i);
    return w;
}

}  // namespace hyperbound
