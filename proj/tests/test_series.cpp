#include <doctest.h>

#include <random>
#include <vector>

#include "cyclo/series.hpp"

using namespace cyclo;

namespace {

CoeffSeries make_trunc(std::vector<long> v, std::size_t order) {
    std::vector<mpz_class> c(v.begin(), v.end());
    return CoeffSeries::truncated(std::move(c), order);
}

CoeffSeries make_exact(std::vector<long> v) {
    std::vector<mpz_class> c(v.begin(), v.end());
    return CoeffSeries::exact(std::move(c));
}

CoeffSeries random_series(std::mt19937& rng, std::size_t order, bool unit_constant) {
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::vector<mpz_class> v(order);
    for (auto& c : v) c = coeff(rng);
    if (unit_constant) v[0] = (rng() & 1) ? 1 : -1;
    return CoeffSeries::truncated(std::move(v), order);
}

}  // namespace

TEST_CASE("mul_binomial geometric and inverse-pair examples") {
    CHECK(mul_binomial(CoeffSeries::constant_trunc(1, 5), 1, -1) ==
          make_trunc({1, 1, 1, 1, 1}, 5));
    CHECK(mul_binomial(make_trunc({1, -1}, 4), 1, -1) == make_trunc({1, 0, 0, 0}, 4));
}

TEST_CASE("mul_binomial chain reproduces the small inverse-cyclotomic pattern") {
    CoeffSeries s = CoeffSeries::constant_trunc(1, 7);
    s = mul_binomial(s, 1, -1);
    s = mul_binomial(s, 3, +1);
    s = mul_binomial(s, 5, +1);
    CHECK(s == make_trunc({1, 1, 1, 0, 0, -1, -1}, 7));
}

TEST_CASE("mul_binomial rejects bad arguments") {
    CHECK_THROWS_AS(mul_binomial(CoeffSeries::constant_trunc(1, 4), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(mul_binomial(CoeffSeries::constant_trunc(1, 4), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(mul_binomial(CoeffSeries::one_exact(), 2, -1), std::invalid_argument);
}

TEST_CASE("mul_binomial on exact polynomials grows the degree") {
    CoeffSeries p = mul_binomial(make_exact({1, 1}), 2, +1);  // (1+x)(1-x^2)
    CHECK(p == make_exact({1, 1, -1, -1}));
    CHECK(p.is_exact());
}

TEST_CASE("multiply then divide by the same binomial is the identity") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t order = 2 + rng() % 63;
        CoeffSeries s = random_series(rng, order, false);
        std::uint64_t d = 1 + rng() % (order - 1);
        CHECK(mul_binomial(mul_binomial(s, d, +1), d, -1) == s);
    }
}

TEST_CASE("mul_trunc examples") {
    CHECK(mul_trunc(make_exact({1, 1}), make_exact({1, -1}), 3) == make_trunc({1, 0, -1}, 3));
    // Phi_2 * Phi_1 = (x+1)(x-1) = x^2 - 1
    CHECK(mul_trunc(make_exact({1, 1}), make_exact({-1, 1}), 3) == make_trunc({-1, 0, 1}, 3));
    CoeffSeries a = make_trunc({3, -2, 5, 7}, 4);
    CHECK(mul_trunc(a, CoeffSeries::one_exact(), 4) == a);
}

TEST_CASE("mul_trunc propagates the minimum order") {
    CoeffSeries a = make_trunc({1, 2}, 2);
    CoeffSeries b = make_trunc({1, 1, 1, 1}, 4);
    CHECK(mul_trunc(a, b, 10).order() == 2);
}

TEST_CASE("mul_trunc is commutative and associative modulo x^K") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t order = 4 + rng() % 29;
        CoeffSeries a = random_series(rng, order, false);
        CoeffSeries b = random_series(rng, order, false);
        CoeffSeries c = random_series(rng, order, false);
        CHECK(mul_trunc(a, b, order) == mul_trunc(b, a, order));
        CHECK(mul_trunc(mul_trunc(a, b, order), c, order) ==
              mul_trunc(a, mul_trunc(b, c, order), order));
    }
}

TEST_CASE("inverse_trunc examples") {
    CHECK(inverse_trunc(make_exact({1, -1}), 4) == make_trunc({1, 1, 1, 1}, 4));
    // Phi_1 = x - 1 has the all. -1 inverse series
    CHECK(inverse_trunc(make_exact({-1, 1}), 3) == make_trunc({-1, -1, -1}, 3));
    CHECK_THROWS_AS(inverse_trunc(make_exact({2, 1}), 4), std::invalid_argument);
}

TEST_CASE("inverse_trunc composes with mul_trunc to one") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t order = 2 + rng() % 127;
        CoeffSeries a = random_series(rng, order, true);
        CoeffSeries inv = inverse_trunc(a, order);
        CHECK(mul_trunc(a, inv, order) == CoeffSeries::constant_trunc(1, order));
    }
}

TEST_CASE("poly_divide_exact examples") {
    // (x^2 - 1) / (x - 1) = x + 1
    CHECK(poly_divide_exact(make_exact({-1, 0, 1}), make_exact({-1, 1})) == make_exact({1, 1}));
    // (x^6 - 1) / ((x-1)(x+1)(x^2+x+1)) = x^2 - x + 1
    CoeffSeries denom = mul(mul(make_exact({-1, 1}), make_exact({1, 1})), make_exact({1, 1, 1}));
    CHECK(poly_divide_exact(make_exact({-1, 0, 0, 0, 0, 0, 1}), denom) == make_exact({1, -1, 1}));
    CoeffSeries a = make_exact({4, -2, 7});
    CHECK(poly_divide_exact(a, a) == CoeffSeries::one_exact());
}

TEST_CASE("poly_divide_exact rejects inexact quotients") {
    CHECK_THROWS_AS(poly_divide_exact(make_exact({1, 0, 1}), make_exact({-1, 1})),
                    std::domain_error);
    CHECK_THROWS_AS(poly_divide_exact(make_exact({1, 1}), make_exact({2, 2})), std::domain_error);
    CHECK_THROWS_AS(poly_divide_exact(make_exact({1}), CoeffSeries()), std::invalid_argument);
}

TEST_CASE("coefficients never round: products of large values stay exact") {
    // (10^30 x + 1)^2 needs ~200 bits in the middle coefficient.
    mpz_class big("1000000000000000000000000000000");
    CoeffSeries p = CoeffSeries::exact({1, big});
    CoeffSeries sq = mul(p, p);
    CHECK(sq.at(2) == big * big);
    CHECK(sq.at(1) == 2 * big);
}

TEST_CASE("max_abs_coeff reports the height") {
    CHECK(max_abs_coeff(make_exact({1, -7, 3})) == 7);
    CHECK(max_abs_coeff(CoeffSeries()) == 0);
}
