#include "cyclo/arith.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace cyclo {

namespace {

constexpr std::uint64_t kSieveBound = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<bool> composite(kSieveBound + 1, false);
        std::vector<std::uint32_t> ps;
        for (std::uint64_t i = 2; i <= kSieveBound; ++i) {
            if (composite[i]) continue;
            ps.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= kSieveBound; j += i) composite[j] = true;
        }
        return ps;
    }();
    return table;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Strong pseudoprime test to base a; n odd, n - 1 = d * 2^s.
bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Brent-cycle Pollard rho; n odd composite with no factors <= sieve bound.
std::uint64_t pollard_rho(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        for (std::uint64_t limit = 2; d == 1; limit *= 2) {
            x = y;
            for (std::uint64_t i = 0; i < limit && d == 1; ++i) {
                y = mulmod(y, y, n) + c;
                if (y >= n) y -= n;
                std::uint64_t diff = x > y ? x - y : y - x;
                if (diff == 0) {
                    d = n;  // cycle closed without a factor; retry with new c
                    break;
                }
                d = std::gcd(diff, n);
            }
        }
        if (d != n) return d;
    }
}

void split_factor(std::uint64_t n, std::vector<std::uint64_t>& primes_out) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes_out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    split_factor(d, primes_out);
    split_factor(n / d, primes_out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> bases = {2,  3,  5,  7,  11, 13,
                                                            17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic for every n < 3.3 * 10^24.
    for (std::uint64_t a : bases)
        if (!strong_probable_prime(n, a, d, s)) return false;
    return true;
}

PrimeFactorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    PrimeFactorization f;
    f.value = mpz_from_u64(n);
    std::uint64_t rest = n;
    for (std::uint32_t p : small_primes()) {
        if (static_cast<std::uint64_t>(p) * p > rest) break;
        if (rest % p != 0) continue;
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (rest > 1) {
        if (is_prime(rest)) {
            f.factors.push_back({rest, 1});
        } else {
            std::vector<std::uint64_t> parts;
            split_factor(rest, parts);
            std::sort(parts.begin(), parts.end());
            for (std::uint64_t p : parts) {
                if (!f.factors.empty() && f.factors.back().prime == p)
                    ++f.factors.back().exponent;
                else
                    f.factors.push_back({p, 1});
            }
        }
    }
    return f;
}

PrimeFactorization PrimeFactorization::from_parts(std::vector<PrimePower> parts) {
    std::sort(parts.begin(), parts.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    PrimeFactorization f;
    for (const PrimePower& pp : parts) {
        if (pp.exponent == 0) continue;
        if (!is_prime(pp.prime))
            throw std::invalid_argument("PrimeFactorization::from_parts: part is not prime");
        if (!f.factors.empty() && f.factors.back().prime == pp.prime)
            f.factors.back().exponent += pp.exponent;
        else
            f.factors.push_back(pp);
    }
    f.value = 1;
    for (const PrimePower& pp : f.factors) {
        mpz_class q;
        mpz_pow_ui(q.get_mpz_t(), mpz_from_u64(pp.prime).get_mpz_t(), pp.exponent);
        f.value *= q;
    }
    return f;
}

bool PrimeFactorization::contains_prime(std::uint64_t p) const {
    auto it = std::lower_bound(factors.begin(), factors.end(), p,
                               [](const PrimePower& pp, std::uint64_t v) { return pp.prime < v; });
    return it != factors.end() && it->prime == p;
}

bool PrimeFactorization::is_squarefree() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& pp) { return pp.exponent == 1; });
}

int mobius(const PrimeFactorization& f) {
    if (!f.is_squarefree()) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

mpz_class euler_phi(const PrimeFactorization& f) {
    mpz_class r = 1;
    for (const PrimePower& pp : f.factors) {
        mpz_class p = mpz_from_u64(pp.prime);
        for (unsigned i = 1; i < pp.exponent; ++i) r *= p;
        r *= p - 1;
    }
    return r;
}

mpz_class radical(const PrimeFactorization& f) {
    mpz_class r = 1;
    for (const PrimePower& pp : f.factors) r *= mpz_from_u64(pp.prime);
    return r;
}

std::uint64_t next_prime_in_ap(std::uint64_t lower, std::uint64_t modulus, std::uint64_t residue,
                               const PrimeFactorization& avoid, const SearchLimits& limits) {
    if (modulus == 0) throw std::invalid_argument("next_prime_in_ap: modulus must be positive");
    std::uint64_t r = residue % modulus;
    if (modulus > 1 && std::gcd(r, modulus) != 1)
        throw std::invalid_argument("next_prime_in_ap: residue not coprime to modulus");
    if (lower >= UINT64_MAX - modulus) throw budget_error("next_prime_in_ap: range overflow");
    std::uint64_t c = lower + 1;
    std::uint64_t rem = c % modulus;
    if (rem != r) c += (r >= rem) ? r - rem : modulus - (rem - r);
    for (std::uint64_t scanned = 0; scanned < limits.scan_cap; ++scanned) {
        if (is_prime(c) && !avoid.contains_prime(c)) return c;
        if (c > UINT64_MAX - modulus) throw budget_error("next_prime_in_ap: range overflow");
        c += modulus;
    }
    throw budget_error("next_prime_in_ap: scan cap exceeded");
}

bool PrimeWindow::valid() const {
    if (count == 0 || modulus == 0 || base == 0) return false;
    if (primes.size() != count) return false;
    if (modulus > 1 && std::gcd(residue % modulus, modulus) != 1) return false;
    std::uint64_t prev = 0;
    for (std::uint64_t p : primes) {
        if (p <= prev) return false;
        prev = p;
        if (!is_prime(p)) return false;
        if (p % modulus != residue % modulus) return false;
        if (p <= base) return false;
        if (static_cast<unsigned __int128>(8) * p >= static_cast<unsigned __int128>(15) * base)
            return false;
    }
    return true;
}

PrimeWindow find_prime_window(std::uint64_t count, std::uint64_t modulus, std::uint64_t floor,
                              const SearchLimits& limits) {
    if (count == 0) throw std::invalid_argument("find_prime_window: count must be >= 1");
    if (modulus == 0) throw std::invalid_argument("find_prime_window: modulus must be positive");
    if (floor == 0) throw std::invalid_argument("find_prime_window: floor must be positive");

    std::uint64_t base = floor;
    std::uint64_t scanned = 0;
    std::uint64_t r1 = 1 % modulus;
    for (std::uint64_t retry = 0; retry <= limits.window_retries; ++retry) {
        std::vector<std::uint64_t> found;
        std::uint64_t c = base + 1;
        std::uint64_t rem = c % modulus;
        if (rem != r1) c += (r1 >= rem) ? r1 - rem : modulus - (rem - r1);
        while (static_cast<unsigned __int128>(8) * c < static_cast<unsigned __int128>(15) * base) {
            if (++scanned > limits.scan_cap)
                throw budget_error("find_prime_window: scan cap exceeded");
            if (is_prime(c)) {
                found.push_back(c);
                if (found.size() == count) break;
            }
            if (c > UINT64_MAX - modulus) throw budget_error("find_prime_window: range overflow");
            c += modulus;
        }
        if (found.size() == count) {
            PrimeWindow w;
            w.count = count;
            w.modulus = modulus;
            w.residue = r1;
            w.base = base;
            w.primes = std::move(found);
            return w;
        }
        if (base > UINT64_MAX / 9) throw budget_error("find_prime_window: base overflow");
        base += (base + 7) / 8;  // ceil(9*base/8)
    }
    throw budget_error("find_prime_window: retry cap exceeded");
}

}  // namespace cyclo
