#include <doctest.h>

#include <numeric>
#include <vector>

#include "cyclo/arith.hpp"

using namespace cyclo;

namespace {

// Independent trial-division oracle for the primality sweep.
bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> divisors_naive(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

int mobius_u64(std::uint64_t n) { return mobius(factorize(n)); }

}  // namespace

TEST_CASE("factorize basic decompositions") {
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(1).value == 1);

    PrimeFactorization f12 = factorize(12);
    CHECK(f12.factors == std::vector<PrimePower>{{2, 2}, {3, 1}});

    PrimeFactorization f210 = factorize(210);
    CHECK(f210.factors == std::vector<PrimePower>{{2, 1}, {3, 1}, {5, 1}, {7, 1}});

    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reproduces its input as a product") {
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        PrimeFactorization f = factorize(n);
        mpz_class prod = 1;
        std::uint64_t prev = 0;
        for (const PrimePower& pp : f.factors) {
            CHECK(pp.prime > prev);
            prev = pp.prime;
            for (unsigned i = 0; i < pp.exponent; ++i) prod *= mpz_from_u64(pp.prime);
        }
        CHECK(prod == mpz_from_u64(n));
    }
}

TEST_CASE("factorize splits large semiprimes past the sieve") {
    // 1000003 and 1000033 are prime and above the trial-division table.
    std::uint64_t n = 1000003ULL * 1000033ULL;
    PrimeFactorization f = factorize(n);
    CHECK(f.factors == std::vector<PrimePower>{{1000003, 1}, {1000033, 1}});
}

TEST_CASE("mobius examples and conventions") {
    CHECK(mobius_u64(1) == 1);
    CHECK(mobius_u64(6) == 1);
    CHECK(mobius_u64(12) == 0);
    CHECK(mobius_u64(30) == -1);
}

TEST_CASE("mobius is multiplicative on coprime arguments") {
    for (std::uint64_t a = 1; a <= 100; ++a)
        for (std::uint64_t b = 1; b <= 100; ++b) {
            if (std::gcd(a, b) != 1) continue;
            CHECK(mobius_u64(a * b) == mobius_u64(a) * mobius_u64(b));
        }
}

TEST_CASE("mobius divisor identity on squarefree n") {
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        if (mobius_u64(n) == 0) continue;
        for (std::uint64_t d : divisors_naive(n))
            CHECK(mobius_u64(n / d) == mobius_u64(n) * mobius_u64(d));
    }
}

TEST_CASE("sum of mobius over divisors vanishes for n >= 2") {
    for (std::uint64_t n = 2; n <= 2000; ++n) {
        int sum = 0;
        for (std::uint64_t d : divisors_naive(n)) sum += mobius_u64(d);
        CHECK(sum == 0);
    }
}

TEST_CASE("euler_phi examples and divisor sum") {
    CHECK(euler_phi(factorize(1)) == 1);
    CHECK(euler_phi(factorize(105)) == 48);
    for (std::uint64_t p : {2, 3, 5, 97, 65537}) CHECK(euler_phi(factorize(p)) == p - 1);

    for (std::uint64_t n = 1; n <= 2000; ++n) {
        mpz_class sum = 0;
        for (std::uint64_t d : divisors_naive(n)) sum += euler_phi(factorize(d));
        CHECK(sum == mpz_from_u64(n));
    }
}

TEST_CASE("radical examples") {
    CHECK(radical(factorize(1)) == 1);
    CHECK(radical(factorize(12)) == 6);
    CHECK(radical(factorize(30)) == 30);
    CHECK(radical(factorize(8)) == 2);
}

TEST_CASE("is_prime matches trial division up to 10^6") {
    for (std::uint64_t n = 0; n <= 1'000'000; ++n)
        if (is_prime(n) != trial_division_prime(n)) {
            CAPTURE(n);
            CHECK(is_prime(n) == trial_division_prime(n));
        }
    CHECK(!is_prime(1));
    CHECK(is_prime(2));
    CHECK(!is_prime(561));  // Carmichael number 3 * 11 * 17
}

TEST_CASE("is_prime handles strong-pseudoprime traps") {
    CHECK(!is_prime(3215031751ULL));
    CHECK(!is_prime(3825123056546413051ULL));
    CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
    CHECK(!is_prime(18446744073709551615ULL));
}

TEST_CASE("from_parts assembles sorted factorizations") {
    PrimeFactorization f = PrimeFactorization::from_parts({{5, 1}, {3, 2}, {5, 1}});
    CHECK(f.factors == std::vector<PrimePower>{{3, 2}, {5, 2}});
    CHECK(f.value == 225);
    CHECK(f.contains_prime(3));
    CHECK(!f.contains_prime(7));
    CHECK_THROWS_AS(PrimeFactorization::from_parts({{6, 1}}), std::invalid_argument);
}

TEST_CASE("next_prime_in_ap examples") {
    PrimeFactorization one = factorize(1);
    CHECK(next_prime_in_ap(10, 4, 3, one) == 11);
    CHECK(next_prime_in_ap(2, 1, 0, one) == 3);
    CHECK(next_prime_in_ap(100, 6, 1, one) == 103);
}

TEST_CASE("next_prime_in_ap honors the avoid set") {
    // Without the avoid set the scan from 10 in 1 mod 3 would stop at 13.
    CHECK(next_prime_in_ap(12, 3, 1, factorize(13)) == 19);
}

TEST_CASE("next_prime_in_ap rejects bad residues and fails loudly on budget") {
    PrimeFactorization one = factorize(1);
    CHECK_THROWS_AS(next_prime_in_ap(10, 4, 2, one), std::invalid_argument);
    SearchLimits tiny;
    tiny.scan_cap = 3;
    CHECK_THROWS_AS(next_prime_in_ap(100, 1000, 1, one, tiny), budget_error);
}

TEST_CASE("find_prime_window examples") {
    PrimeWindow w = find_prime_window(1, 1, 8);
    CHECK(w.base == 8);
    CHECK(w.primes == std::vector<std::uint64_t>{11});
    CHECK(w.valid());

    PrimeWindow w2 = find_prime_window(2, 3, 16);
    CHECK(w2.valid());
    CHECK(w2.primes.size() == 2);
    for (std::uint64_t p : w2.primes) CHECK(p % 3 == 1);

    PrimeWindow w3 = find_prime_window(3, 1, 8);
    CHECK(w3.valid());
    CHECK(w3.primes.size() == 3);
}

TEST_CASE("find_prime_window postconditions re-tested directly") {
    for (std::uint64_t count : {1, 2, 5}) {
        for (std::uint64_t modulus : {1, 3, 15}) {
            PrimeWindow w = find_prime_window(count, modulus, 16);
            CHECK(w.count == count);
            CHECK(w.modulus == modulus);
            CHECK(w.valid());
            CHECK(w.base >= 16);
            std::uint64_t prev = 0;
            for (std::uint64_t p : w.primes) {
                CHECK(is_prime(p));
                CHECK(p > w.base);
                CHECK(8 * p < 15 * w.base);
                CHECK(p % modulus == 1 % modulus);
                CHECK(p > prev);
                prev = p;
            }
        }
    }
}

TEST_CASE("find_prime_window fails loudly when the budget runs out") {
    SearchLimits tiny;
    tiny.window_retries = 0;
    tiny.scan_cap = 1000;
    // (16, 30) holds no primes ≡ 1 mod 9699690, and no retries are allowed.
    CHECK_THROWS_AS(find_prime_window(1, 9699690, 16, tiny), budget_error);
}
