#include <doctest.h>

#include <set>

#include "hyperbound/combinatorics.hpp"
#include "hyperbound/rational.hpp"
#include "oracles.hpp"

using namespace hyperbound;

TEST_CASE("rational parsing and printing round-trip") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(to_string(make_rational(6, 4)) == "3/2");
    CHECK(to_string(make_rational(-4, 2)) == "-2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(" 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);

    oracle::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const Rational q = g.rational(-1000000, 1000000, 100000);
        CHECK(parse_rational(to_string(q)) == q);
    }
}

TEST_CASE("floor, ceil and pow") {
    CHECK(floor(Rational(7, 2)) == 3);
    CHECK(floor(Rational(-7, 2)) == -4);
    CHECK(ceil(Rational(7, 2)) == 4);
    CHECK(ceil(Rational(-7, 2)) == -3);
    CHECK(ceil(Rational(4)) == 4);
    CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(pow(Rational(5), 0) == 1);
    CHECK(pow(Integer(3), 4UL) == 81);
}

TEST_CASE("ceil_root is the least integer whose power reaches x") {
    CHECK(ceil_root(Rational(128), 2) == 12);
    CHECK(ceil_root(Rational(144), 2) == 12);
    CHECK(ceil_root(Rational(0), 3) == 0);
    CHECK(ceil_root(Rational(1, 1000), 3) == 1);
    oracle::Gen g(5);
    for (int i = 0; i < 300; ++i) {
        const Rational x = g.rational(0, 10000000, 1000);
        const unsigned long p = static_cast<unsigned long>(g.integer(1, 7));
        const Integer m = ceil_root(x, p);
        CHECK(Rational(pow(m, p)) >= x);
        if (m > 0) CHECK(Rational(pow(Integer(m - 1), p)) < x);
    }
}

TEST_CASE("factorial and binomial agree with the oracles") {
    for (long n = 0; n <= 40; ++n) CHECK(factorial(n) == oracle::brute_factorial(n));
    for (long n = 0; n <= 30; ++n) {
        for (long k = -2; k <= n + 2; ++k) CHECK(binomial(n, k) == oracle::pascal(n, k));
    }
    CHECK_THROWS(binomial(-1, 0));
    CHECK_THROWS(factorial(-1));
}

TEST_CASE("multinomial coefficients") {
    const std::vector<long> parts{2, 1, 1};
    CHECK(multinomial(4, parts) == 12);
    const std::vector<long> bad{2, 2};
    CHECK_THROWS_AS(multinomial(3, bad), std::invalid_argument);
    const std::vector<long> neg{5, -1};
    CHECK_THROWS_AS(multinomial(4, neg), std::invalid_argument);

    // Sum over compositions of total into k parts is k^total.
    for (int total = 0; total <= 7; ++total) {
        for (std::size_t k = 1; k <= 4; ++k) {
            Integer s = 0;
            for_each_composition(total, k, [&](std::span<const int> c) {
                std::vector<long> p(c.begin(), c.end());
                s += multinomial(total, p);
            });
            CHECK(s == pow(Integer(static_cast<long>(k)), static_cast<unsigned long>(total)));
        }
    }
}

TEST_CASE("composition and subset enumeration") {
    for (int total = 0; total <= 6; ++total) {
        for (std::size_t parts = 1; parts <= 4; ++parts) {
            std::vector<std::vector<int>> seen;
            for_each_composition(total, parts, [&](std::span<const int> c) { seen.emplace_back(c.begin(), c.end()); });
            CHECK(seen.size() == oracle::pascal(total + static_cast<long>(parts) - 1, static_cast<long>(parts) - 1).get_ui());
            for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] > seen[i]);
        }
    }
    for (std::size_t size = 0; size <= 6; ++size) {
        for (std::size_t m = 0; m <= size + 1; ++m) {
            std::set<std::vector<int>> seen;
            for_each_subset(size, m, [&](std::span<const int> s) {
                std::vector<int> v(s.begin(), s.end());
                for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] < v[i]);
                seen.insert(v);
            });
            CHECK(seen.size() == oracle::pascal(static_cast<long>(size), static_cast<long>(m)).get_ui());
        }
    }
}

TEST_CASE("elementary symmetric functions match brute-force subsets") {
    const std::vector<Rational> a{2, 1};
    CHECK(elementary_symmetric(0, a) == 1);
    CHECK(elementary_symmetric(1, a) == 3);
    CHECK(elementary_symmetric(2, a) == 2);
    CHECK_THROWS_AS(elementary_symmetric(3, a), std::out_of_range);

    oracle::Gen g(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = static_cast<std::size_t>(g.integer(0, 8));
        std::vector<Rational> xs;
        for (std::size_t i = 0; i < len; ++i) xs.push_back(g.rational(-20, 20, 7));
        const auto all = elementary_symmetric_all(xs);
        REQUIRE(all.size() == len + 1);
        for (std::size_t j = 0; j <= len; ++j) {
            CHECK(elementary_symmetric(j, xs) == oracle::brute_esym(j, xs));
            CHECK(all[j] == oracle::brute_esym(j, xs));
        }
    }
}

TEST_CASE("elementary symmetric functions are homogeneous") {
    oracle::Gen g(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t len = static_cast<std::size_t>(g.integer(1, 7));
        const Rational c = g.positive_rational(9, 5);
        std::vector<Rational> xs, ys;
        for (std::size_t i = 0; i < len; ++i) {
            xs.push_back(g.positive_rational(30, 6));
            ys.push_back(c * xs.back());
        }
        for (std::size_t j = 0; j <= len; ++j) {
            CHECK(elementary_symmetric(j, ys) == pow(c, static_cast<long>(j)) * elementary_symmetric(j, xs));
        }
    }
}

TEST_CASE("weight vectors") {
    CHECK(WeightVector({Integer(9), Integer(3), Integer(1)}).nef_ok());
    CHECK_FALSE(WeightVector({Integer(2), Integer(1)}).nef_ok());
    CHECK(WeightVector({Integer(5)}).nef_ok());
    CHECK_THROWS_AS(WeightVector({Integer(2), Integer(0)}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({Integer(-1)}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector(std::vector<Integer>{}), std::invalid_argument);
    CHECK(mu_weighted(WeightVector({Integer(2), Integer(1)})) == 4);
    CHECK(mu_weighted(WeightVector({Integer(9), Integer(3), Integer(1)})) == 18);
}
