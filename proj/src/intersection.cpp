#include "hyperbound/intersection.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

namespace hyperbound {

namespace {

// Mixed radix key for vectors with entries in [0, radix).
class KeyCodec {
public:
    KeyCodec(std::size_t arity, long radix) : radix_(radix), pw_(arity) {
        std::uint64_t p = 1;
        const auto r = static_cast<std::uint64_t>(radix);
        for (std::size_t v = 0; v < arity; ++v) {
            pw_[v] = p;
            if (v + 1 < arity && p > std::numeric_limits<std::uint64_t>::max() / r) {
                throw std::length_error("exponent box too large to index");
            }
            p *= r;
        }
    }
    std::uint64_t key(std::span<const int> e) const {
        std::uint64_t k = 0;
        for (std::size_t v = 0; v < pw_.size(); ++v) k += static_cast<std::uint64_t>(e[v]) * pw_[v];
        return k;
    }
    std::uint64_t unit(std::size_t v) const { return pw_[v]; }
    long radix() const { return radix_; }

private:
    long radix_;
    std::vector<std::uint64_t> pw_;
};

struct CTerm {
    std::vector<int> k;
    Integer c;
};

std::vector<CTerm> c_terms_from_dense(const DenseUSeries& d) {
    const std::size_t uarity = d.caps.size();
    std::vector<CTerm> out;
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
        std::vector<int> k(uarity + 1);
        long prev = 0;
        for (std::size_t i = 0; i < uarity; ++i) {
            k[i] = static_cast<int>(m[i] - prev);
            prev = m[i];
        }
        k[uarity] = static_cast<int>(-prev);
        out.push_back({std::move(k), d.coeff[idx]});
    }
    return out;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
    return a * b;
}

std::size_t count_multi_indices(int kappa, int max_q) {
    // number of j in N^kappa with |j| <= max_q
    return static_cast<std::size_t>(binomial(max_q + kappa, kappa).get_ui());
}

void require_kappa_at_least_n(const Parameters& params) {
    if (params.kappa() < params.n()) {
        throw std::invalid_argument("the intersection polynomial needs kappa >= n");
    }
}

std::vector<long> caps_for(const Parameters& params, const ComputeOptions& options) {
    if (!options.t_windows) return sufficient_prefix_caps(params, params.n());
    const auto& w = *options.t_windows;
    if (static_cast<int>(w.size()) != params.kappa()) {
        throw std::invalid_argument("window override needs one window per t variable");
    }
    const long lo = params.n() - params.n_kappa() - 1;
    const long hi = 2L * params.n();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].lo > lo || w[i].hi < hi) {
            throw std::invalid_argument("window override for t_" + std::to_string(i + 1) +
                                        " is insufficient: it must contain [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]");
        }
    }
    return prefix_caps_from_windows(w);
}

long total_cap(std::span<const long> caps) {
    long s = 0;
    for (long c : caps) s += c;
    return s;
}

// Coefficients of f_r s_m without the f_prefactor, either from an expanded
// table of (a . t)^(n_kappa - r) or from the closed form per lookup.
class FsCoefficients {
public:
    FsCoefficients(const Parameters& params, int r, int m, const KeyCodec& codec, bool expand)
        : params_(params), r_(r), m_(m), codec_(codec), expand_(expand) {
        if (!expand_) return;
        const auto kappa = static_cast<std::size_t>(params.kappa());
        const int deg = static_cast<int>(params.n_kappa() - r);
        std::vector<std::vector<Integer>> apow(kappa, std::vector<Integer>(static_cast<std::size_t>(deg) + 1));
        for (std::size_t i = 0; i < kappa; ++i) {
            apow[i][0] = 1;
            for (int e = 1; e <= deg; ++e) {
                apow[i][static_cast<std::size_t>(e)] = apow[i][static_cast<std::size_t>(e - 1)] * params.a()[i];
            }
        }
        std::vector<long> parts(kappa);
        for_each_composition(deg, kappa, [&](std::span<const int> x) {
            Integer c = 1;
            for (std::size_t i = 0; i < kappa; ++i) {
                parts[i] = x[i];
                c *= apow[i][static_cast<std::size_t>(x[i])];
            }
            table_.emplace(codec_.key(x), c * multinomial(deg, parts));
        });
        for_each_subset(kappa, static_cast<std::size_t>(m), [&](std::span<const int> idx) {
            std::uint64_t off = 0;
            for (int i : idx) off += codec_.unit(static_cast<std::size_t>(i));
            subsets_.push_back({std::vector<int>(idx.begin(), idx.end()), off});
        });
    }

    /// Accumulates val * F(e) into acc.
    void accumulate(Integer& acc, std::span<const int> e, std::uint64_t key, const Integer& val) const {
        if (!expand_) {
            const Integer f = fs_coefficient_reduced(params_, r_, m_, e);
            if (sgn(f) != 0) mpz_addmul(acc.get_mpz_t(), val.get_mpz_t(), f.get_mpz_t());
            return;
        }
        for (const auto& s : subsets_) {
            bool ok = true;
            for (int i : s.idx) {
                if (e[static_cast<std::size_t>(i)] < 1) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            const auto it = table_.find(key - s.offset);
            if (it != table_.end()) mpz_addmul(acc.get_mpz_t(), val.get_mpz_t(), it->second.get_mpz_t());
        }
    }

private:
    struct Subset {
        std::vector<int> idx;
        std::uint64_t offset;
    };
    const Parameters& params_;
    int r_;
    int m_;
    const KeyCodec& codec_;
    bool expand_;
    std::unordered_map<std::uint64_t, Integer> table_;
    std::vector<Subset> subsets_;
};

struct GEntry {
    std::vector<int> e;
    std::uint64_t key;
    Integer value;
};

// G_q[e] = sum over |j| = q and C terms k with e = n + j - k of B_j C_k,
// restricted to 0 <= e_i <= n_kappa + 1.
std::vector<GEntry> build_G(const Parameters& params, int q, const std::vector<CTerm>& cterms, const KeyCodec& codec) {
    const auto kappa = static_cast<std::size_t>(params.kappa());
    const int n = params.n();
    const long emax = params.n_kappa() + 1;
    std::unordered_map<std::uint64_t, Integer> acc;
    std::vector<int> e(kappa);
    for_each_composition(q, kappa, [&](std::span<const int> j) {
        Integer bj = (q % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < kappa; ++i) bj *= binomial(n + j[i], n);
        for (const auto& ct : cterms) {
            bool ok = true;
            for (std::size_t i = 0; i < kappa; ++i) {
                const int v = n + j[i] - ct.k[i];
                if (v < 0 || v > emax) {
                    ok = false;
                    break;
                }
                e[i] = v;
            }
            if (!ok) continue;
            mpz_addmul(acc[codec.key(e)].get_mpz_t(), bj.get_mpz_t(), ct.c.get_mpz_t());
        }
    });
    std::vector<GEntry> out;
    out.reserve(acc.size());
    for (auto& [key, val] : acc) {
        if (sgn(val) == 0) continue;
        std::vector<int> ev(kappa);
        std::uint64_t k = key;
        for (std::size_t i = 0; i < kappa; ++i) {
            ev[i] = static_cast<int>(k % static_cast<std::uint64_t>(codec.radix()));
            k /= static_cast<std::uint64_t>(codec.radix());
        }
        out.push_back({std::move(ev), key, std::move(val)});
    }
    // Deterministic order for reproducible reductions.
    std::sort(out.begin(), out.end(), [](const GEntry& a, const GEntry& b) { return a.key < b.key; });
    return out;
}

}  // namespace

IntersectionPolynomial::IntersectionPolynomial(int n, std::vector<Rational> raw) : n_(n), raw_(std::move(raw)) {
    if (n < 0) throw std::invalid_argument("negative polynomial degree");
    if (raw_.size() != static_cast<std::size_t>(n) + 1) {
        throw std::invalid_argument("intersection polynomial needs n + 1 coefficients");
    }
}

IntersectionPolynomial IntersectionPolynomial::from_conventional(int n, const std::vector<Rational>& coeffs) {
    if (coeffs.size() != static_cast<std::size_t>(n) + 1) {
        throw std::invalid_argument("intersection polynomial needs n + 1 coefficients");
    }
    std::vector<Rational> raw(coeffs);
    for (std::size_t p = 1; p < raw.size(); ++p) raw[p] = -raw[p];
    return IntersectionPolynomial(n, std::move(raw));
}

const Rational& IntersectionPolynomial::raw(int p) const {
    if (p < 0 || p > n_) throw std::out_of_range("coefficient index out of range");
    return raw_[static_cast<std::size_t>(p)];
}

Rational IntersectionPolynomial::conventional(int p) const { return p == 0 ? raw(0) : Rational(-raw(p)); }

Rational IntersectionPolynomial::eval(const Rational& d) const {
    Rational v = 0;
    for (const auto& c : raw_) v = v * d + c;
    return v;
}

BudgetExceeded::BudgetExceeded(std::size_t required, std::size_t budget)
    : std::runtime_error("work estimate " + std::to_string(required) + " exceeds budget " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

std::vector<long> sufficient_prefix_caps(const Parameters& params, int max_q) {
    // m_i = k_1 + ... + k_i <= i n + (j_1 + ... + j_i) and
    // m_i = -(k_{i+1} + ... + k_kappa) <= (kappa - i)(n_kappa + 1 - n).
    const long n = params.n();
    const long kappa = params.kappa();
    const long reach = params.n_kappa() + 1 - n;
    std::vector<long> caps;
    for (long i = 1; i < kappa; ++i) caps.push_back(std::min(i * n + max_q, (kappa - i) * reach));
    return caps;
}

std::size_t estimate_work(const Parameters& params, const ComputeOptions& options) {
    const std::size_t cells = options.unit_C ? 1 : dense_box_size(caps_for(params, options));
    const std::size_t js = options.unit_B ? 1 : count_multi_indices(params.kappa(), params.n());
    return saturating_mul(cells, js);
}

std::size_t estimate_work_I0(const Parameters& params) {
    return saturating_mul(dense_box_size(sufficient_prefix_caps(params, 0)),
                          static_cast<std::size_t>(params.kappa()) * static_cast<std::size_t>(params.kappa()));
}

IntersectionPolynomial compute_I(const Parameters& params, const ComputeOptions& options) {
    require_kappa_at_least_n(params);
    const int n = params.n();
    const int kappa = params.kappa();
    const std::size_t work = estimate_work(params, options);
    if (work > options.budget) throw BudgetExceeded(work, options.budget);

    std::vector<CTerm> cterms;
    if (options.unit_C) {
        cterms.push_back({std::vector<int>(static_cast<std::size_t>(kappa), 0), Integer(1)});
    } else {
        const std::vector<long> caps = caps_for(params, options);
        cterms = c_terms_from_dense(build_C_dense(kappa, caps, total_cap(caps)));
    }

    const KeyCodec codec(static_cast<std::size_t>(kappa), params.n_kappa() + 2);
    const bool expand = static_cast<long>(kappa) * params.n_kappa() <= options.expansion_threshold;
    const int max_q = options.unit_B ? 0 : n;

    std::vector<Rational> raw(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int q = 0; q <= max_q; ++q) {
        const std::vector<GEntry> G = build_G(params, q, cterms, codec);
        for (int p = q; p <= n; ++p) {
            // alpha part: f_{p-q} s_{kappa-n+p}; beta part: f_{p+1-q} s_{kappa-n+p+1}
            const struct {
                int r, m;
                Rational weight;
            } parts[2] = {{p - q, kappa - n + p, alpha(p - q, params)},
                          {p + 1 - q, kappa - n + p + 1, -beta(p + 1 - q, params)}};
            for (const auto& part : parts) {
                if (part.m < 0 || part.m > kappa || part.weight == 0) continue;
                const FsCoefficients fs(params, part.r, part.m, codec, expand);
                Integer s = 0;
                for (const auto& g : G) fs.accumulate(s, g.e, g.key, g.value);
                raw[static_cast<std::size_t>(p)] += part.weight * Rational(f_prefactor(params, part.r) * s);
            }
        }
    }
    return IntersectionPolynomial(n, std::move(raw));
}

IntersectionPolynomial compute_I_by_direct_product(const Parameters& params) {
    require_kappa_at_least_n(params);
    const int n = params.n();
    const auto kappa = static_cast<std::size_t>(params.kappa());
    const std::size_t arity = kappa + 2;

    const SparseSeries A = build_A(params);

    auto bpol = TruncationPolicy::unbounded(kappa + 1);
    bpol.window(0, 0, n);
    for (std::size_t v = 1; v <= kappa; ++v) bpol.window(v, -n, 0);
    const SparseSeries B = build_B_truncated(params, bpol).map_exponents(arity, [](const ExponentVector& e) {
        std::vector<int> x{0};
        for (int v : e.values()) x.push_back(v);
        return ExponentVector(std::move(x));
    });

    const SparseSeries C = build_C_truncated(params, default_C_policy(params))
                               .map_exponents(arity, [](const ExponentVector& e) {
                                   std::vector<int> x{0, 0};
                                   for (int v : e.values()) x.push_back(v);
                                   return ExponentVector(std::move(x));
                               });

    auto target = TruncationPolicy::unbounded(arity);
    target.window(1, n, n);
    for (std::size_t v = 2; v < arity; ++v) target.window(v, n, n);
    const std::vector<SparseSeries> factors{A, B, C};
    const SparseSeries product = product_chain(factors, target);

    std::vector<Rational> raw;
    for (int p = 0; p <= n; ++p) {
        ExponentVector e(arity);
        e[0] = n - p;
        e[1] = n;
        for (std::size_t v = 2; v < arity; ++v) e[v] = n;
        raw.push_back(product.coefficient(e));
    }
    return IntersectionPolynomial(n, std::move(raw));
}

IntersectionPolynomial compute_I_tilde(const Parameters& params) {
    require_kappa_at_least_n(params);
    const int n = params.n();
    const int kappa = params.kappa();
    Integer prod_a = 1;
    for (const auto& a : params.a().entries()) prod_a *= a;
    const Integer top = pow(Integer(2 * params.mu()), static_cast<unsigned long>(n)) * factorial(params.n_kappa()) *
                        pow(prod_a, static_cast<unsigned long>(n - 1));
    const Integer bottom = pow(factorial(n - 1), static_cast<unsigned long>(kappa));
    const Rational tilde_n = make_rational(top, bottom);

    const Rational scale = Rational(2 * n) * Rational(params.mu());
    std::vector<Rational> x;
    for (const auto& a : params.a().entries()) x.push_back(Rational(a) / scale);
    const std::vector<Rational> s = elementary_symmetric_all(x);

    std::vector<Rational> conv;
    for (int p = 0; p <= n; ++p) conv.push_back(s[static_cast<std::size_t>(n - p)] * tilde_n);
    return IntersectionPolynomial::from_conventional(n, conv);
}

Rational compute_I_tilde_direct(const Parameters& params, int p) {
    require_kappa_at_least_n(params);
    const int n = params.n();
    if (p < 0 || p > n) throw std::out_of_range("p out of range");
    const SparseSeries prod =
        series_mul(build_f_p(params, p), elementary_symmetric_series(params.kappa(), params.kappa() - n + p));
    return prod.coefficient(ExponentVector(std::vector<int>(static_cast<std::size_t>(params.kappa()), n)));
}

I0Decomposition decompose_I0(const Parameters& params, std::size_t budget) {
    if (params.kappa() != params.n()) throw std::invalid_argument("the I_0 decomposition needs kappa = n");
    const std::size_t work = estimate_work_I0(params);
    if (work > budget) throw BudgetExceeded(work, budget);
    const int n = params.n();
    const std::vector<long> caps = sufficient_prefix_caps(params, 0);
    const std::vector<CTerm> cterms = c_terms_from_dense(build_C_dense(params.kappa(), caps, total_cap(caps)));

    Integer plus = 0, minus = 0, slope = 0;
    std::vector<int> e(static_cast<std::size_t>(n));
    for (const auto& ct : cterms) {
        bool ok = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = n - ct.k[i];
            if (e[i] < 0) ok = false;
        }
        if (!ok) continue;
        const Integer f0 = fs_coefficient_reduced(params, 0, 0, e);
        if (sgn(ct.c) > 0) {
            mpz_addmul(plus.get_mpz_t(), f0.get_mpz_t(), ct.c.get_mpz_t());
        } else {
            mpz_submul(minus.get_mpz_t(), f0.get_mpz_t(), ct.c.get_mpz_t());
        }
        const Integer f1 = fs_coefficient_reduced(params, 1, 1, e);
        mpz_addmul(slope.get_mpz_t(), f1.get_mpz_t(), ct.c.get_mpz_t());
    }
    const Integer pre1 = f_prefactor(params, 1);
    return {Rational(plus), Rational(minus), Rational(pre1 * slope)};
}

}  // namespace hyperbound
