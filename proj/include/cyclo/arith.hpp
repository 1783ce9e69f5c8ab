#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace cyclo {

/// Thrown when an adaptive search (prime scan, window retry, degree cap)
/// exhausts its configured budget. Never a silent wrap or a truncated result.
class budget_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caps for the adaptive prime searches.
struct SearchLimits {
    std::uint64_t window_retries = 64;    // geometric base growths per window search
    std::uint64_t scan_cap = 10'000'000;  // candidates examined per search
};

inline std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (p > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("checked_mul_u64: product exceeds 64 bits");
    return static_cast<std::uint64_t>(p);
}

inline mpz_class mpz_from_u64(std::uint64_t v) {
    static_assert(sizeof(unsigned long) == 8, "LP64 assumed");
    return mpz_class(static_cast<unsigned long>(v));
}

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition of a positive integer, primes strictly
/// increasing. `value` may exceed the word size when the factorization is
/// assembled from known parts (witness verification does this; it never
/// refactors a large value).
struct PrimeFactorization {
    mpz_class value = 1;
    std::vector<PrimePower> factors;

    /// Assembles a factorization from known prime powers. Sorts, merges
    /// duplicates, checks primality of every part.
    static PrimeFactorization from_parts(std::vector<PrimePower> parts);

    bool contains_prime(std::uint64_t p) const;
    unsigned omega() const { return static_cast<unsigned>(factors.size()); }
    bool is_squarefree() const;
};

/// T primes p with base < p, 8p < 15*base and p ≡ residue (mod modulus),
/// in increasing order.
struct PrimeWindow {
    std::uint64_t count = 0;
    std::uint64_t modulus = 1;
    std::uint64_t residue = 0;
    std::uint64_t base = 0;
    std::vector<std::uint64_t> primes;

    /// Re-tests every structural invariant, including primality of each entry.
    bool valid() const;
};

/// Prime-power decomposition by trial division over a sieved prime table,
/// with Pollard-rho splitting for leftovers beyond the table's square.
/// Rejects n = 0.
PrimeFactorization factorize(std::uint64_t n);

/// 0 if any exponent is >= 2, else (-1)^omega.
int mobius(const PrimeFactorization& f);

/// prod p^(e-1) * (p-1).
mpz_class euler_phi(const PrimeFactorization& f);

/// Product of the distinct primes dividing the value (squarefree kernel).
mpz_class radical(const PrimeFactorization& f);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Smallest prime q > lower with q ≡ residue (mod modulus) that does not
/// divide avoid.value. Requires gcd(residue, modulus) = 1 unless modulus = 1.
std::uint64_t next_prime_in_ap(std::uint64_t lower, std::uint64_t modulus,
                               std::uint64_t residue, const PrimeFactorization& avoid,
                               const SearchLimits& limits = {});

/// Smallest tried base n >= floor whose open interval (n, 15n/8) holds at
/// least `count` primes ≡ 1 (mod modulus); returns the first `count` of them.
/// The base grows by a factor of 9/8 per retry up to limits.window_retries.
PrimeWindow find_prime_window(std::uint64_t count, std::uint64_t modulus,
                              std::uint64_t floor, const SearchLimits& limits = {});

}  // namespace cyclo
