#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "cyclo/arith.hpp"
#include "cyclo/cyclotomic.hpp"

namespace cyclo {

/// The progression under study: coefficient indices m * (s*j + t), j >= 1.
struct ProgressionSpec {
    std::uint64_t s = 1;
    std::uint64_t t = 0;
    std::uint64_t m = 1;

    friend bool operator==(const ProgressionSpec&, const ProgressionSpec&) = default;
};

/// gcd-reduction of (s, t): s*j + t = g * (s'*j + r) with gcd(s', r) = 1,
/// where gcd(s, 0) = s so that t = 0 collapses to s' = 1, r = 0.
struct ProgressionReduction {
    std::uint64_t g = 1;
    std::uint64_t s_prime = 1;
    std::uint64_t r = 0;
};

/// Which index realizes the target: k = p_T + 1 (Low) or k = p_T + q4 (High).
enum class TargetBranch { Low, High };

/// Complete constructive record for one coefficient witness. Everything a
/// verifier needs travels in the certificate; in particular the
/// factorization of n is implied by the parts and is never recovered by
/// refactoring n.
struct WitnessCertificate {
    CoefficientKind kind = CoefficientKind::Forward;
    long long target = 0;
    ProgressionSpec original;
    std::uint64_t m_reduced = 0;      // squarefree, > 1, mu = +1
    std::uint64_t prime_count = 0;    // T
    PrimeWindow window;               // p_1 < ... < p_T, all ≡ 1 (mod m_reduced * s')
    std::uint64_t q1 = 0;             // prime > 2*p_1, ≡ r (mod s')
    std::optional<std::uint64_t> q2;  // prime > q1, ≡ 1 (mod s'), present per the parity rule
    std::uint64_t q3 = 0;             // two smallest prime divisors of m_reduced
    std::uint64_t q4 = 0;
    mpz_class m1;      // p_1 * ... * p_T * q1 (* q2)
    mpz_class n;       // witness index
    mpz_class k;       // witness coefficient position
    mpz_class computed = 0;
    bool verified = false;
};

ProgressionReduction reduce_progression(std::uint64_t s, std::uint64_t t);

/// Normalizes a multiplier: takes the squarefree kernel, then multiplies in
/// at most two fresh odd primes ≡ 1 (mod s'), smallest first, until the
/// result is squarefree, > 1 and has mu = +1.
std::uint64_t prepare_multiplier(std::uint64_t m, std::uint64_t s_prime,
                                 const SearchLimits& limits = {});

/// Window size realizing target z: z = 1 - T at k = p_T + 1 for z <= 0,
/// z = T - 1 at k = p_T + q4 for z > 0.
std::pair<std::uint64_t, TargetBranch> target_to_count(long long z);

/// Runs the full constructive pipeline and returns an unverified
/// certificate. Throws budget_error when a prime search gives out and
/// std::logic_error if the assembled certificate fails its own invariants.
WitnessCertificate build_witness(const ProgressionSpec& spec, long long z, CoefficientKind kind,
                                 const SearchLimits& limits = {});

/// Re-checks every structural invariant, then recomputes the coefficient by
/// independent truncated evaluation from the certificate's parts and
/// cross-checks the truncated congruence identity against
/// (1/Phi_m) * (1 - mu(m) * (x^{p_1} + ... + x^{p_T})) mod x^{2 p_1}.
/// Any violation yields (false, computed); never throws on bad input.
std::pair<bool, mpz_class> verify_certificate(const WitnessCertificate& cert);

/// Predicted coefficient c(m, k) - mu(m) * T * c(m, k - 1), valid for
/// p_T <= k < 2*p_1 when every p_j ≡ 1 (mod m).
mpz_class eq3_predict(std::uint64_t m, std::uint64_t prime_count, std::uint64_t k,
                      std::span<const std::uint64_t> p_list);

}  // namespace cyclo
