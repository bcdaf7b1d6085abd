#include "hyperbound/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hyperbound {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!is_integer_literal(s)) {
        throw std::invalid_argument("malformed integer literal '" + std::string(s) + "'");
    }
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!den.empty() && (den[0] == '-' || den[0] == '+')) {
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
    return make_rational(parse_integer(num), parse_integer(den));
}

std::string to_string(const Rational& x) { return x.get_str(10); }
std::string to_string(const Integer& x) { return x.get_str(10); }

Integer pow(const Integer& base, unsigned long exponent) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("zero raised to a negative power");
        return pow(Rational(1 / base), -exponent);
    }
    const auto e = static_cast<unsigned long>(exponent);
    return make_rational(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
}

Integer floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil_root(const Rational& x, unsigned long p) {
    if (p == 0) throw std::invalid_argument("ceil_root: zero exponent");
    if (x < 0) throw std::domain_error("ceil_root: negative radicand");
    const Integer fl = floor(x);
    Integer m;
    mpz_root(m.get_mpz_t(), fl.get_mpz_t(), p);
    while (Rational(pow(m, p)) < x) ++m;
    return m;
}

double approximate(const Rational& x) { return x.get_d(); }

}  // namespace hyperbound
