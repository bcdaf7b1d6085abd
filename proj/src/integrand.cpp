#include "hyperbound/integrand.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace hyperbound {

namespace {

// One term of a factor expansion in u: exponent shift and coefficient.
struct UTerm {
    std::vector<long> shift;
    Integer coeff;
};

void add_range(std::vector<long>& shift, int from, int to, long by) {
    for (int v = from; v <= to; ++v) shift[static_cast<std::size_t>(v)] += by;
}

// Exponent budget for repeating a block of u-variables [from, to].
long block_limit(std::span<const long> caps, int from, int to) {
    long lim = std::numeric_limits<long>::max();
    for (int v = from; v <= to; ++v) lim = std::min(lim, caps[static_cast<std::size_t>(v)]);
    return lim;
}

long total_of(const std::vector<long>& s) {
    long t = 0;
    for (long x : s) t += x;
    return t;
}

// Terms of one factor of C as a power series in u (0-based u indices:
// u_i = t_i / t_{i+1} sits at i - 1). Only shifts inside the caps are kept.
std::vector<UTerm> factor_terms(const FactorKind& f, std::size_t uarity, std::span<const long> caps, long total_cap,
                                bool majorant) {
    std::vector<UTerm> out;
    const int ufrom = f.i - 1;  // U_ij = u_i ... u_{j-1}
    const int uto = f.j - 2;
    const long len = f.j - f.i;
    const long ulim = std::min(block_limit(caps, ufrom, uto), total_cap / len);
    if (f.family == FactorFamily::first) {
        // (1 - U) / (1 - 2U) = 1 + sum_{k>=1} 2^(k-1) U^k
        for (long k = 0; k <= ulim; ++k) {
            std::vector<long> s(uarity, 0);
            add_range(s, ufrom, uto, k);
            out.push_back({std::move(s), k == 0 ? Integer(1) : pow(Integer(2), static_cast<unsigned long>(k - 1))});
        }
        return out;
    }
    // 1 / (1 + W / (1 - 2U)) with W = u_{i-1} U:
    // sum_l (-W)^l (1 - 2U)^(-l); [W^l U^s] = (-1)^l binom(l+s-1, s) 2^s.
    const int w = f.i - 2;
    out.push_back({std::vector<long>(uarity, 0), Integer(1)});
    for (long l = 1; l <= ulim && l <= caps[static_cast<std::size_t>(w)]; ++l) {
        for (long s = 0; l + s <= ulim; ++s) {
            std::vector<long> sh(uarity, 0);
            sh[static_cast<std::size_t>(w)] += l;
            add_range(sh, ufrom, uto, l + s);
            if (total_of(sh) > total_cap) break;
            Integer c = binomial(l + s - 1, s) * pow(Integer(2), static_cast<unsigned long>(s));
            if (!majorant && (l % 2 == 1)) c = -c;
            out.push_back({std::move(sh), std::move(c)});
        }
    }
    return out;
}

void check_point(int kappa, std::span<const Rational> t) {
    if (static_cast<int>(t.size()) != kappa) {
        throw std::invalid_argument("evaluation point has " + std::to_string(t.size()) + " coordinates, expected " +
                                    std::to_string(kappa));
    }
}

Rational checked_ratio(const Rational& num, const Rational& den) {
    if (den == 0) throw std::domain_error("singular evaluation point: vanishing denominator");
    return num / den;
}

ExponentVector prepend(int head, const ExponentVector& tail) {
    std::vector<int> e;
    e.reserve(tail.arity() + 1);
    e.push_back(head);
    for (int x : tail.values()) e.push_back(x);
    return ExponentVector(std::move(e));
}

SparseSeries with_h_power(const SparseSeries& t_series, int h_power) {
    return t_series.map_exponents(t_series.arity() + 1,
                                  [&](const ExponentVector& e) { return prepend(h_power, e); });
}

}  // namespace

Parameters::Parameters(int n, int kappa, WeightVector a, Rational delta)
    : n_(n), kappa_(kappa), a_(std::move(a)), delta_(std::move(delta)) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (kappa < 1) throw std::invalid_argument("kappa must be at least 1");
    if (static_cast<int>(a_.size()) != kappa) {
        throw std::invalid_argument("weight vector has length " + std::to_string(a_.size()) + ", expected kappa = " +
                                    std::to_string(kappa));
    }
    if (delta_ < 0) throw std::invalid_argument("delta must be nonnegative");
    mu_ = mu_weighted(a_);
}

Parameters Parameters::geometric(int n, int kappa, Rational delta) {
    if (n < 1 || kappa < 1) throw std::invalid_argument("geometric weights need n, kappa >= 1");
    std::vector<Integer> a;
    for (int i = 1; i <= kappa; ++i) a.push_back(pow(Integer(n), static_cast<unsigned long>(kappa - i)));
    return Parameters(n, kappa, WeightVector(std::move(a)), std::move(delta));
}

Rational Parameters::canonical_delta(int n) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    return Rational(1, 1) / Rational(35 * pow(Integer(n), static_cast<unsigned long>(n)));
}

Parameters Parameters::scaled(const Integer& c) const {
    std::vector<Integer> a;
    for (const auto& x : a_.entries()) a.push_back(c * x);
    return Parameters(n_, kappa_, WeightVector(std::move(a)), delta_);
}

Parameters Parameters::with_delta(Rational delta) const { return Parameters(n_, kappa_, a_, std::move(delta)); }

std::vector<FactorKind> c_factors(int kappa) {
    std::vector<FactorKind> out;
    for (int i = 1; i <= kappa; ++i) {
        for (int j = i + 1; j <= kappa; ++j) out.push_back({FactorFamily::first, i, j});
    }
    for (int i = 2; i <= kappa; ++i) {
        for (int j = i + 1; j <= kappa; ++j) out.push_back({FactorFamily::second, i, j});
    }
    return out;
}

Rational alpha(int i, const Parameters& params) {
    if (i < 0 || i > params.n() + 1) throw std::out_of_range("alpha index out of range");
    const Rational c = 1 - params.delta() * params.n() - params.delta();
    return (1 - c * i) / Rational(factorial(i));
}

Rational beta(int i, const Parameters& params) {
    if (i < 0 || i > params.n() + 1) throw std::out_of_range("beta index out of range");
    return params.delta() * i / Rational(factorial(i));
}

Integer f_prefactor(const Parameters& params, int p) {
    const long nk = params.n_kappa();
    if (p < 0 || p > nk) throw std::out_of_range("f index out of range");
    return factorial(nk) / factorial(nk - p) * pow(Integer(2 * params.mu()), static_cast<unsigned long>(p));
}

SparseSeries build_f_p(const Parameters& params, int p) {
    if (p < 0 || p > params.n() + 1) throw std::out_of_range("f_p index out of range");
    const int deg = static_cast<int>(params.n_kappa() - p);
    const auto kappa = static_cast<std::size_t>(params.kappa());
    const Integer pre = f_prefactor(params, p);
    std::vector<std::vector<Integer>> apow(kappa, std::vector<Integer>(static_cast<std::size_t>(deg) + 1));
    for (std::size_t i = 0; i < kappa; ++i) {
        apow[i][0] = 1;
        for (int e = 1; e <= deg; ++e) apow[i][static_cast<std::size_t>(e)] = apow[i][static_cast<std::size_t>(e - 1)] * params.a()[i];
    }
    std::vector<Term> terms;
    std::vector<long> parts(kappa);
    for_each_composition(deg, kappa, [&](std::span<const int> x) {
        Integer c = pre;
        for (std::size_t i = 0; i < kappa; ++i) {
            parts[i] = x[i];
            c *= apow[i][static_cast<std::size_t>(x[i])];
        }
        c *= multinomial(deg, parts);
        terms.push_back({ExponentVector(std::vector<int>(x.begin(), x.end())), Rational(c)});
    });
    return SparseSeries::from_terms(kappa, std::move(terms));
}

SparseSeries build_f(const Parameters& params) {
    const auto kappa = static_cast<std::size_t>(params.kappa());
    const std::size_t arity = kappa + 2;
    const long nk = params.n_kappa();
    const Rational two_mu(2 * params.mu());

    std::vector<Term> lin;
    ExponentVector eh(arity);
    eh[1] = 1;
    lin.push_back({eh, two_mu});
    for (std::size_t i = 0; i < kappa; ++i) {
        ExponentVector e(arity);
        e[i + 2] = 1;
        lin.push_back({e, Rational(params.a()[i])});
    }
    const SparseSeries base = SparseSeries::from_terms(arity, std::move(lin));

    auto policy = TruncationPolicy::unbounded(arity);
    policy.window(1, 0, params.n());

    const SparseSeries pow_nm1 = series_pow(base, static_cast<unsigned>(nk - 1), policy);
    const SparseSeries pow_n = series_mul(pow_nm1, base, policy);

    // n_kappa (delta d + 1 - delta n - delta) 2 mu h
    const Rational c = 1 - params.delta() * params.n() - params.delta();
    std::vector<Term> corr;
    ExponentVector edh(arity);
    edh[0] = 1;
    edh[1] = 1;
    corr.push_back({edh, Rational(nk) * params.delta() * two_mu});
    corr.push_back({eh, Rational(nk) * c * two_mu});
    const SparseSeries correction = SparseSeries::from_terms(arity, std::move(corr));

    return pow_n - series_mul(correction, pow_nm1, policy);
}

SparseSeries elementary_symmetric_series(int kappa, int j) {
    const auto k = static_cast<std::size_t>(kappa);
    if (j < 0 || j > kappa) return SparseSeries(k);
    std::vector<Term> terms;
    for_each_subset(k, static_cast<std::size_t>(j), [&](std::span<const int> idx) {
        ExponentVector e(k);
        for (int i : idx) e[static_cast<std::size_t>(i)] = 1;
        terms.push_back({std::move(e), Rational(1)});
    });
    return SparseSeries::from_terms(k, std::move(terms));
}

SparseSeries build_A(const Parameters& params) {
    const auto kappa = static_cast<std::size_t>(params.kappa());
    const std::size_t arity = kappa + 2;
    auto policy = TruncationPolicy::unbounded(arity);
    policy.window(1, 0, params.n());

    SparseSeries acc = build_f(params);
    for (std::size_t i = 0; i < kappa; ++i) {
        ExponentVector edh(arity);
        edh[0] = 1;
        edh[1] = 1;
        ExponentVector et(arity);
        et[i + 2] = 1;
        const SparseSeries factor = SparseSeries::from_terms(arity, {{edh, Rational(1)}, {et, Rational(1)}});
        acc = series_mul(acc, factor, policy);
    }
    return acc;
}

SparseSeries build_A_p(const Parameters& params, int p) {
    const int n = params.n();
    const int kappa = params.kappa();
    if (p < 0 || p > n) throw std::out_of_range("A_p index out of range");
    SparseSeries out(static_cast<std::size_t>(kappa) + 1);
    for (int q = 0; q <= p; ++q) {
        SparseSeries inner(static_cast<std::size_t>(kappa));
        const int m1 = kappa - n + p;
        const int r1 = p - q;
        if (m1 >= 0 && m1 <= kappa && alpha(r1, params) != 0) {
            inner = inner + alpha(r1, params) * series_mul(build_f_p(params, r1), elementary_symmetric_series(kappa, m1));
        }
        const int m2 = m1 + 1;
        const int r2 = p + 1 - q;
        if (m2 >= 0 && m2 <= kappa && beta(r2, params) != 0) {
            inner = inner - beta(r2, params) * series_mul(build_f_p(params, r2), elementary_symmetric_series(kappa, m2));
        }
        out = out + with_h_power(inner, n - q);
    }
    return out;
}

Integer fs_coefficient_reduced(const Parameters& params, int r, int m, std::span<const int> e) {
    const auto kappa = static_cast<std::size_t>(params.kappa());
    if (e.size() != kappa) throw std::invalid_argument("fs_coefficient: exponent arity mismatch");
    const long deg = params.n_kappa() - r;
    long total = 0;
    for (int x : e) {
        if (x < 0) return 0;
        total += x;
    }
    if (m < 0 || m > params.kappa() || total != deg + m) return 0;
    Integer sum = 0;
    std::vector<long> parts(kappa);
    for_each_subset(kappa, static_cast<std::size_t>(m), [&](std::span<const int> idx) {
        for (std::size_t i = 0; i < kappa; ++i) parts[i] = e[i];
        for (int i : idx) parts[static_cast<std::size_t>(i)] -= 1;
        Integer term = 1;
        for (std::size_t i = 0; i < kappa; ++i) {
            if (parts[i] < 0) return;
            term *= pow(params.a()[i], static_cast<unsigned long>(parts[i]));
        }
        sum += multinomial(deg, parts) * term;
    });
    return sum;
}

Integer fs_coefficient(const Parameters& params, int r, int m, std::span<const int> e) {
    return f_prefactor(params, r) * fs_coefficient_reduced(params, r, m, e);
}

SparseSeries build_B_truncated(const Parameters& params, const TruncationPolicy& policy) {
    const auto kappa = static_cast<std::size_t>(params.kappa());
    if (policy.arity() != kappa + 1) throw std::invalid_argument("B policy must have arity kappa + 1");
    const Window hw = policy.window_of(0);
    if (hw.hi >= kUnbounded) throw std::invalid_argument("B policy must bound the h-degree");
    const int n = params.n();
    std::vector<Term> terms;
    for (long q = std::max(0L, hw.lo); q <= hw.hi; ++q) {
        for_each_composition(static_cast<int>(q), kappa, [&](std::span<const int> j) {
            ExponentVector e(kappa + 1);
            e[0] = static_cast<int>(q);
            Integer c = (q % 2 == 0) ? 1 : -1;
            for (std::size_t i = 0; i < kappa; ++i) {
                e[i + 1] = -j[i];
                c *= binomial(n + j[i], n);
            }
            if (policy.admissible(e)) terms.push_back({std::move(e), Rational(c)});
        });
    }
    return SparseSeries::from_terms(kappa + 1, std::move(terms));
}

std::size_t DenseUSeries::index(std::span<const long> m) const {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < caps.size(); ++v) idx += static_cast<std::size_t>(m[v]) * stride[v];
    return idx;
}

std::size_t dense_box_size(std::span<const long> prefix_caps) {
    const std::size_t limit = std::numeric_limits<std::size_t>::max() / 4;
    std::size_t s = 1;
    for (long c : prefix_caps) {
        if (c < 0) return 0;
        const auto w = static_cast<std::size_t>(c) + 1;
        if (s > limit / w) return limit;
        s *= w;
    }
    return s;
}

DenseUSeries build_C_dense(int kappa, std::span<const long> prefix_caps, long total_cap, bool majorant) {
    if (kappa < 1) throw std::invalid_argument("kappa must be at least 1");
    const auto uarity = static_cast<std::size_t>(kappa - 1);
    if (prefix_caps.size() != uarity) throw std::invalid_argument("need one prefix cap per ratio variable");
    DenseUSeries out;
    out.caps.assign(prefix_caps.begin(), prefix_caps.end());
    out.total_cap = total_cap;
    out.stride.resize(uarity);
    for (long c : out.caps) {
        if (c < 0) throw std::invalid_argument("prefix caps must be nonnegative");
    }
    if (total_cap < 0) throw std::invalid_argument("total cap must be nonnegative");
    std::size_t s = 1;
    for (std::size_t v = 0; v < uarity; ++v) {
        out.stride[v] = s;
        s *= static_cast<std::size_t>(out.caps[v]) + 1;
    }
    out.coeff.assign(s, Integer(0));
    out.coeff[0] = 1;

    std::vector<Integer> next(s);
    std::vector<long> m(uarity);
    for (const FactorKind& f : c_factors(kappa)) {
        const std::vector<UTerm> terms = factor_terms(f, uarity, out.caps, total_cap, majorant);
        std::vector<std::size_t> offsets;
        offsets.reserve(terms.size());
        for (const auto& t : terms) offsets.push_back(out.index(t.shift));
        for (auto& x : next) x = 0;
        std::fill(m.begin(), m.end(), 0);
        long total = 0;
        for (std::size_t idx = 0; idx < s; ++idx) {
            if (idx > 0) {
                // advance the mixed-radix counter
                for (std::size_t v = 0; v < uarity; ++v) {
                    if (m[v] < out.caps[v]) {
                        ++m[v];
                        ++total;
                        break;
                    }
                    total -= m[v];
                    m[v] = 0;
                }
            }
            const Integer& src = out.coeff[idx];
            if (sgn(src) == 0) continue;
            for (std::size_t k = 0; k < terms.size(); ++k) {
                const auto& sh = terms[k].shift;
                bool ok = true;
                long tt = total;
                for (std::size_t v = 0; v < uarity; ++v) {
                    if (m[v] + sh[v] > out.caps[v]) {
                        ok = false;
                        break;
                    }
                    tt += sh[v];
                }
                if (!ok || tt > total_cap) continue;
                mpz_addmul(next[idx + offsets[k]].get_mpz_t(), src.get_mpz_t(), terms[k].coeff.get_mpz_t());
            }
        }
        out.coeff.swap(next);
    }
    return out;
}

namespace {

SparseSeries dense_to_sparse(const DenseUSeries& d) {
    const std::size_t uarity = d.caps.size();
    std::vector<Term> terms;
    std::vector<long> m(uarity, 0);
    for (std::size_t idx = 0; idx < d.coeff.size(); ++idx) {
        if (idx > 0) {
            for (std::size_t v = 0; v < uarity; ++v) {
                if (m[v] < d.caps[v]) {
                    ++m[v];
                    break;
                }
                m[v] = 0;
            }
        }
        if (sgn(d.coeff[idx]) == 0) continue;
        std::vector<int> e(m.begin(), m.end());
        terms.push_back({ExponentVector(std::move(e)), Rational(d.coeff[idx])});
    }
    return SparseSeries::from_terms(uarity, std::move(terms));
}

}  // namespace

SparseSeries build_C_in_u(int kappa, std::span<const long> prefix_caps, long total_cap) {
    return dense_to_sparse(build_C_dense(kappa, prefix_caps, total_cap, false));
}

SparseSeries build_C_majorant_in_u(int kappa, std::span<const long> prefix_caps, long total_cap) {
    return dense_to_sparse(build_C_dense(kappa, prefix_caps, total_cap, true));
}

ExponentVector u_to_t(const ExponentVector& m) {
    const std::size_t kappa = m.arity() + 1;
    ExponentVector k(kappa);
    int prev = 0;
    for (std::size_t i = 0; i + 1 < kappa; ++i) {
        k[i] = m[i] - prev;
        prev = m[i];
    }
    k[kappa - 1] = -prev;
    return k;
}

ExponentVector t_to_u(const ExponentVector& k) {
    if (k.arity() == 0) throw std::invalid_argument("t_to_u: empty exponent");
    if (k.total() != 0) throw std::invalid_argument("t_to_u: exponent is not of degree zero");
    ExponentVector m(k.arity() - 1);
    int run = 0;
    for (std::size_t i = 0; i + 1 < k.arity(); ++i) {
        run += k[i];
        m[i] = run;
    }
    return m;
}

std::vector<long> prefix_caps_from_windows(std::span<const Window> t_windows) {
    const std::size_t kappa = t_windows.size();
    std::vector<long> caps;
    for (std::size_t i = 1; i < kappa; ++i) {
        long hi_sum = 0;
        for (std::size_t l = 0; l < i; ++l) hi_sum = std::min(kUnbounded, hi_sum + t_windows[l].hi);
        long lo_sum = 0;
        for (std::size_t l = i; l < kappa; ++l) lo_sum = std::max(-kUnbounded, lo_sum + t_windows[l].lo);
        caps.push_back(std::min(hi_sum, -lo_sum));
    }
    return caps;
}

SparseSeries build_C_truncated(int kappa, const TruncationPolicy& policy) {
    const auto k = static_cast<std::size_t>(kappa);
    if (policy.arity() != k) throw std::invalid_argument("C policy must have arity kappa");
    const auto& cap = policy.cap();
    if (!cap) throw std::invalid_argument("C has infinite support: a weighted-length cap is required");
    if (cap->weights != weighted_length_weights(k)) {
        throw std::invalid_argument("C truncation cap must use the weighted-length weights (kappa - i)");
    }
    std::vector<long> caps = prefix_caps_from_windows(policy.windows());
    if (cap->cap < 0) return SparseSeries(k);
    for (long& c : caps) {
        if (c < 0) return SparseSeries(k);
        c = std::min(c, cap->cap);
    }
    if (dense_box_size(caps) > (std::size_t{1} << 28)) {
        throw std::length_error("C truncation region too large; tighten the windows");
    }
    const SparseSeries u = build_C_in_u(kappa, caps, cap->cap);
    return u.map_exponents(k, [](const ExponentVector& m) { return u_to_t(m); }).filter(policy);
}

SparseSeries build_C_truncated(const Parameters& params, const TruncationPolicy& policy) {
    return build_C_truncated(params.kappa(), policy);
}

TruncationPolicy default_C_policy(const Parameters& params) {
    const auto kappa = static_cast<std::size_t>(params.kappa());
    const long lo = params.n() - params.n_kappa() - 1;
    const long hi = 2L * params.n();
    auto policy = TruncationPolicy::unbounded(kappa);
    for (std::size_t v = 0; v < kappa; ++v) policy.window(v, lo, hi);
    long total = 0;
    for (long c : prefix_caps_from_windows(policy.windows())) total += c;
    policy.weighted_cap(weighted_length_weights(kappa), total);
    return policy;
}

Rational eval_C_at(int kappa, std::span<const Rational> t) {
    check_point(kappa, t);
    Rational value = 1;
    for (const FactorKind& f : c_factors(kappa)) {
        const Rational& ti = t[static_cast<std::size_t>(f.i - 1)];
        const Rational& tj = t[static_cast<std::size_t>(f.j - 1)];
        if (f.family == FactorFamily::first) {
            if (!(2 * abs(ti) < abs(tj))) throw std::domain_error("point outside the convergence domain of C");
            value *= checked_ratio(tj - ti, tj - 2 * ti);
        } else {
            const Rational& tp = t[static_cast<std::size_t>(f.i - 2)];
            if (!(2 * abs(ti) + abs(tp) < abs(tj))) throw std::domain_error("point outside the convergence domain of C");
            value *= checked_ratio(tj - 2 * ti, tj - 2 * ti + tp);
        }
    }
    return value;
}

Rational eval_absC_at(int kappa, std::span<const Rational> t) {
    check_point(kappa, t);
    Rational value = 1;
    for (const FactorKind& f : c_factors(kappa)) {
        const Rational ti = abs(t[static_cast<std::size_t>(f.i - 1)]);
        const Rational tj = abs(t[static_cast<std::size_t>(f.j - 1)]);
        if (f.family == FactorFamily::first) {
            if (!(2 * ti < tj)) throw std::domain_error("point outside the convergence domain of the majorant");
            value *= checked_ratio(tj - ti, tj - 2 * ti);
        } else {
            const Rational tp = abs(t[static_cast<std::size_t>(f.i - 2)]);
            if (!(2 * ti + tp < tj)) throw std::domain_error("point outside the convergence domain of the majorant");
            value *= checked_ratio(tj - 2 * ti, tj - 2 * ti - tp);
        }
    }
    return value;
}

namespace {

std::vector<Rational> reciprocal_weights(const Parameters& params) {
    std::vector<Rational> t;
    for (const auto& a : params.a().entries()) t.push_back(Rational(1) / Rational(a));
    return t;
}

}  // namespace

Rational eval_C_at(const Parameters& params) { return eval_C_at(params.kappa(), reciprocal_weights(params)); }

Rational eval_absC_at(const Parameters& params) { return eval_absC_at(params.kappa(), reciprocal_weights(params)); }

Rational eval_absB_at(int n, std::span<const Rational> x) {
    Rational value = 1;
    for (const auto& xi : x) {
        const Rational ax = abs(xi);
        if (!(ax < 1)) throw std::domain_error("point outside the convergence domain of B");
        value *= pow(Rational(1 - ax), -static_cast<long>(n + 1));
    }
    return value;
}

Rational eval_absB_at(const Parameters& params) {
    const Rational scale = Rational(2 * params.n()) * Rational(params.mu());
    std::vector<Rational> x;
    for (const auto& a : params.a().entries()) x.push_back(Rational(a) / scale);
    return eval_absB_at(params.n(), x);
}

}  // namespace hyperbound
